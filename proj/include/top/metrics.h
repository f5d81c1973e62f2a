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

// Run metrics: one row per finished episode and per evaluation point,
// written as CSV with a fixed column order and 9 significant digits.

#ifndef TOP_METRICS_H_
#define TOP_METRICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace top {

struct MetricsRow {
  int64_t step = 0;
  int64_t episode = 0;
  std::string env_name;
  uint64_t seed = 0;
  double beta = 0.0;
  std::vector<double> arm_probs;
  std::optional<double> episode_return;
  std::optional<double> eval_return;
  std::optional<double> critic_loss_1;
  std::optional<double> critic_loss_2;
  std::optional<double> actor_objective;
  std::optional<double> mean_sigma;
  std::optional<double> bandit_feedback_normalized;
};

struct OptimismTraceRow {
  int64_t episode = 0;
  int64_t step = 0;
  size_t arm = 0;
  double beta = 0.0;
  double optimism = 0.0;
  std::vector<double> arm_probs;
};

// "%.9g"; non-finite values print as nan/inf.
std::string FormatReal(double x);

std::string MetricsHeader(size_t num_arms);
std::string FormatMetricsRow(const MetricsRow& row);
std::string OptimismTraceHeader(size_t num_arms);
std::string FormatOptimismTraceRow(const OptimismTraceRow& row);

// Writes header + rows with LF line endings.
void WriteMetricsCsv(const std::string& path,
                     const std::vector<MetricsRow>& rows, size_t num_arms);
void WriteOptimismTraceCsv(const std::string& path,
                           const std::vector<OptimismTraceRow>& rows,
                           size_t num_arms);

// Minimal reader for the comma-separated files written here (no quoting).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index, or -1 when absent.
  int Column(const std::string& name) const;
};

CsvTable ReadCsv(const std::string& path);
CsvTable ParseCsv(const std::string& text);

// Blank cells map to nullopt; anything else must parse as a real.
std::optional<double> ParseCell(const std::string& cell);

}  // namespace top

#endif  // TOP_METRICS_H_
