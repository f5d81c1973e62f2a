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

#include "top/aggregate.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "top/metrics.h"

namespace top {
namespace {

int64_t Bucket(int64_t step, int64_t width) {
  return (step + width - 1) / width * width;
}

// bucket -> per-run mean of the values that fell into it.
std::map<int64_t, double> BucketMeans(
    const std::vector<std::pair<int64_t, double>>& points, int64_t width) {
  std::map<int64_t, std::pair<double, int>> sums;
  for (const auto& [step, value] : points) {
    auto& s = sums[Bucket(step, width)];
    s.first += value;
    s.second += 1;
  }
  std::map<int64_t, double> means;
  for (const auto& [bucket, s] : sums) means[bucket] = s.first / s.second;
  return means;
}

void AppendStats(std::string& line, const std::optional<MeanStd>& s) {
  if (s.has_value()) {
    line += ',' + std::to_string(s->n) + ',' + FormatReal(s->mean) + ',' +
            FormatReal(s->std);
  } else {
    line += ",0,,";
  }
}

}  // namespace

MeanStd SampleMeanStd(std::span<const double> values) {
  MeanStd out;
  out.n = values.size();
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

std::vector<AggregateRow> Aggregate(const std::vector<RunSeries>& runs,
                                    int64_t bucket_width) {
  if (bucket_width < 1) throw std::invalid_argument("bucket width must be >= 1");
  std::vector<std::string> order;
  std::map<std::string, std::map<int64_t, std::vector<double>>> evals;
  std::map<std::string, std::map<int64_t, std::vector<double>>> optimism;
  for (const RunSeries& run : runs) {
    if (std::find(order.begin(), order.end(), run.variant) == order.end()) {
      order.push_back(run.variant);
    }
    for (const auto& [b, v] : BucketMeans(run.eval, bucket_width)) {
      evals[run.variant][b].push_back(v);
    }
    for (const auto& [b, v] : BucketMeans(run.optimism, bucket_width)) {
      optimism[run.variant][b].push_back(v);
    }
  }
  std::vector<AggregateRow> rows;
  for (const std::string& variant : order) {
    std::map<int64_t, AggregateRow> by_step;
    for (const auto& [b, values] : evals[variant]) {
      AggregateRow& row = by_step[b];
      row.eval_return = SampleMeanStd(values);
    }
    for (const auto& [b, values] : optimism[variant]) {
      AggregateRow& row = by_step[b];
      row.optimism = SampleMeanStd(values);
    }
    for (auto& [b, row] : by_step) {
      row.variant = variant;
      row.step = b;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

RunSeries LoadRunSeries(const std::string& dir, const std::string& variant,
                        uint64_t seed) {
  RunSeries series;
  series.variant = variant;
  series.seed = seed;
  const std::filesystem::path base(dir);
  const CsvTable metrics = ReadCsv((base / "metrics.csv").string());
  const int step_col = metrics.Column("step");
  const int eval_col = metrics.Column("eval_return");
  if (step_col < 0 || eval_col < 0) {
    throw std::runtime_error(dir + "/metrics.csv: missing step or eval_return");
  }
  for (const auto& row : metrics.rows) {
    if (static_cast<size_t>(eval_col) >= row.size()) continue;
    const auto v = ParseCell(row[eval_col]);
    if (v) series.eval.emplace_back(std::stoll(row[step_col]), *v);
  }
  const auto trace_path = base / "optimism_trace.csv";
  if (std::filesystem::exists(trace_path)) {
    const CsvTable trace = ReadCsv(trace_path.string());
    const int s = trace.Column("step");
    const int o = trace.Column("optimism");
    if (s < 0 || o < 0) {
      throw std::runtime_error(trace_path.string() +
                               ": missing step or optimism");
    }
    for (const auto& row : trace.rows) {
      series.optimism.emplace_back(std::stoll(row[s]), *ParseCell(row[o]));
    }
  }
  return series;
}

std::string AggregateHeader() {
  return "variant,step,eval_runs,eval_return_mean,eval_return_std,"
         "optimism_runs,optimism_mean,optimism_std";
}

void WriteAggregateCsv(const std::string& path,
                       const std::vector<AggregateRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << AggregateHeader() << '\n';
  for (const AggregateRow& row : rows) {
    std::string line = row.variant + ',' + std::to_string(row.step);
    AppendStats(line, row.eval_return);
    AppendStats(line, row.optimism);
    out << line << '\n';
  }
}

}  // namespace top
