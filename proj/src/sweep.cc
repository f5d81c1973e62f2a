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

#include "top/sweep.h"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "top/errors.h"

namespace top {

bool DeterministicMode() {
  const char* v = std::getenv("TOP_DETERMINISTIC");
  return v != nullptr && std::string(v) == "1";
}

RunResult TrainRun(const RunConfig& config, const std::string& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(std::filesystem::path(dir) / "resolved_config.txt",
                      std::ios::binary | std::ios::trunc);
    out << FormatRunConfig(config);
  }
  return RunTraining(config.train, dir, config.flush_interval);
}

Variant ParseVariant(const std::string& text) {
  Variant v;
  const size_t colon = text.find(':');
  v.name = text.substr(0, colon);
  if (v.name.empty()) throw ConfigError("variant needs a name: '" + text + "'");
  if (colon != std::string::npos) {
    std::istringstream in(text.substr(colon + 1));
    std::string part;
    while (std::getline(in, part, ';')) {
      if (!part.empty()) v.overrides.push_back(SplitAssignment(part));
    }
  }
  return v;
}

std::vector<Variant> AblationVariants() {
  return {Variant{"top", {}},
          Variant{"optimistic", {{"beta_options", "0"}}},
          Variant{"pessimistic", {{"beta_options", "-1"}}}};
}

bool SweepResult::all_ok() const {
  for (const SweepRunStatus& r : runs) {
    if (!r.ok) return false;
  }
  return true;
}

SweepResult RunSweep(const RunConfig& base, const std::vector<uint64_t>& seeds,
                     const std::vector<Variant>& variants,
                     const std::string& out_dir, int jobs) {
  TOP_CHECK(!seeds.empty(), "RunSweep: need at least one seed");
  TOP_CHECK(!variants.empty(), "RunSweep: need at least one variant");
  SweepResult result;
  std::vector<RunConfig> configs;
  for (const Variant& variant : variants) {
    for (uint64_t seed : seeds) {
      SweepRunStatus status;
      status.variant = variant.name;
      status.seed = seed;
      status.dir = (std::filesystem::path(out_dir) / variant.name /
                    ("seed_" + std::to_string(seed)))
                       .string();
      RunConfig config = base;
      try {
        std::vector<KeyValue> kvs = variant.overrides;
        kvs.emplace_back("seed", std::to_string(seed));
        ApplyAssignments(config, kvs);
      } catch (const ConfigError& e) {
        status.error = e.what();
      }
      result.runs.push_back(status);
      configs.push_back(config);
    }
  }

  if (DeterministicMode()) jobs = 1;
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < result.runs.size(); i = next++) {
      SweepRunStatus& status = result.runs[i];
      if (!status.error.empty()) continue;
      try {
        const RunResult run = TrainRun(configs[i], status.dir);
        status.ok = !run.aborted;
        if (run.aborted) status.error = "aborted: " + run.error;
      } catch (const std::exception& e) {
        status.error = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }

  std::vector<RunSeries> series;
  for (const SweepRunStatus& status : result.runs) {
    if (status.ok) {
      series.push_back(LoadRunSeries(status.dir, status.variant, status.seed));
    }
  }
  std::filesystem::create_directories(out_dir);
  result.aggregate = Aggregate(series, base.train.eval_interval);
  WriteAggregateCsv((std::filesystem::path(out_dir) / "aggregate.csv").string(),
                    result.aggregate);
  std::ofstream failures(std::filesystem::path(out_dir) / "failures.txt",
                         std::ios::binary | std::ios::trunc);
  for (const SweepRunStatus& status : result.runs) {
    if (!status.ok) {
      failures << status.variant << " seed=" << status.seed << ": "
               << status.error << '\n';
    }
  }
  return result;
}

}  // namespace top
