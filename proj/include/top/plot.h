// Copyright 2026 The TOP-RL Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// SVG line charts of reward and optimism curves, with an optional shaded
// band of half a standard deviation around each mean curve.

#ifndef TOP_PLOT_H_
#define TOP_PLOT_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace top {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  // Half-width of the shaded band at each x; empty for no shading.
  std::vector<double> band;
};

std::string RenderLineChartSvg(const std::string& title,
                               const std::string& x_label,
                               const std::string& y_label,
                               const std::vector<PlotSeries>& series);

// Input CSV did not match any known schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlotData {
  std::vector<PlotSeries> reward;
  std::vector<PlotSeries> optimism;
};

// Accepts metrics.csv, optimism_trace.csv and aggregate.csv files. Several
// metrics files are averaged into one series (sample std across runs);
// a single run gives an unshaded curve. Aggregate files give one series
// per variant with their stored std.
PlotData LoadPlotData(const std::vector<std::string>& csv_paths);

// Writes reward.svg (and optimism.svg when there is optimism data) into
// out_dir; returns the written paths.
std::vector<std::string> WritePlots(const PlotData& data,
                                    const std::string& out_dir);

}  // namespace top

#endif  // TOP_PLOT_H_
