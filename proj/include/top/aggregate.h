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

// Cross-run aggregation: mean and sample standard deviation of evaluation
// return and optimism level per (variant, step bucket).

#ifndef TOP_AGGREGATE_H_
#define TOP_AGGREGATE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace top {

struct RunSeries {
  std::string variant;
  uint64_t seed = 0;
  std::vector<std::pair<int64_t, double>> eval;      // (step, eval return)
  std::vector<std::pair<int64_t, double>> optimism;  // (step, level) per episode
};

struct MeanStd {
  double mean = 0.0;
  // Sample (n - 1) standard deviation; 0 for a single value.
  double std = 0.0;
  size_t n = 0;
};

MeanStd SampleMeanStd(std::span<const double> values);

struct AggregateRow {
  std::string variant;
  int64_t step = 0;
  std::optional<MeanStd> eval_return;
  std::optional<MeanStd> optimism;
};

// Step s falls in bucket ceil(s / bucket_width) * bucket_width. Within a
// run, values in a bucket are averaged first; the statistics are then
// taken across runs. Variants keep their first-appearance order.
std::vector<AggregateRow> Aggregate(const std::vector<RunSeries>& runs,
                                    int64_t bucket_width);

// Reads <dir>/metrics.csv and, when present, <dir>/optimism_trace.csv.
RunSeries LoadRunSeries(const std::string& dir, const std::string& variant,
                        uint64_t seed);

std::string AggregateHeader();
void WriteAggregateCsv(const std::string& path,
                       const std::vector<AggregateRow>& rows);

}  // namespace top

#endif  // TOP_AGGREGATE_H_
