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

#include "top/metrics.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "top/errors.h"

namespace top {
namespace {

void AppendOptional(std::string& line, const std::optional<double>& value) {
  line += ',';
  if (value.has_value()) line += FormatReal(*value);
}

void WriteLines(const std::string& path, const std::string& header,
                const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << header << '\n';
  for (const std::string& line : lines) out << line << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

std::string FormatReal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::string MetricsHeader(size_t num_arms) {
  std::string h = "step,episode,env_name,seed,beta";
  for (size_t d = 0; d < num_arms; ++d) h += ",prob_arm" + std::to_string(d);
  h +=
      ",episode_return,eval_return,critic_loss_1,critic_loss_2,"
      "actor_objective,mean_sigma,bandit_feedback_normalized";
  return h;
}

std::string FormatMetricsRow(const MetricsRow& row) {
  std::string line = std::to_string(row.step) + ',' +
                     std::to_string(row.episode) + ',' + row.env_name + ',' +
                     std::to_string(row.seed) + ',' + FormatReal(row.beta);
  for (double p : row.arm_probs) line += ',' + FormatReal(p);
  AppendOptional(line, row.episode_return);
  AppendOptional(line, row.eval_return);
  AppendOptional(line, row.critic_loss_1);
  AppendOptional(line, row.critic_loss_2);
  AppendOptional(line, row.actor_objective);
  AppendOptional(line, row.mean_sigma);
  AppendOptional(line, row.bandit_feedback_normalized);
  return line;
}

std::string OptimismTraceHeader(size_t num_arms) {
  std::string h = "episode,step,arm,beta,optimism";
  for (size_t d = 0; d < num_arms; ++d) h += ",prob_arm" + std::to_string(d);
  return h;
}

std::string FormatOptimismTraceRow(const OptimismTraceRow& row) {
  std::string line = std::to_string(row.episode) + ',' +
                     std::to_string(row.step) + ',' + std::to_string(row.arm) +
                     ',' + FormatReal(row.beta) + ',' +
                     FormatReal(row.optimism);
  for (double p : row.arm_probs) line += ',' + FormatReal(p);
  return line;
}

void WriteMetricsCsv(const std::string& path,
                     const std::vector<MetricsRow>& rows, size_t num_arms) {
  std::vector<std::string> lines;
  lines.reserve(rows.size());
  for (const MetricsRow& row : rows) lines.push_back(FormatMetricsRow(row));
  WriteLines(path, MetricsHeader(num_arms), lines);
}

void WriteOptimismTraceCsv(const std::string& path,
                           const std::vector<OptimismTraceRow>& rows,
                           size_t num_arms) {
  std::vector<std::string> lines;
  lines.reserve(rows.size());
  for (const OptimismTraceRow& row : rows) {
    lines.push_back(FormatOptimismTraceRow(row));
  }
  WriteLines(path, OptimismTraceHeader(num_arms), lines);
}

int CsvTable::Column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable ParseCsv(const std::string& text) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      table.header = split(line);
      first = false;
    } else {
      table.rows.push_back(split(line));
    }
  }
  return table;
}

CsvTable ReadCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return ParseCsv(text.str());
}

std::optional<double> ParseCell(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != cell.size()) {
    throw ContractError("not a number: '" + cell + "'");
  }
  return value;
}

}  // namespace top
