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

// Single runs with on-disk artifacts, and seed x variant sweeps with a
// cross-run aggregate.

#ifndef TOP_SWEEP_H_
#define TOP_SWEEP_H_

#include <cstdint>
#include <string>
#include <vector>

#include "top/agent.h"
#include "top/aggregate.h"
#include "top/config.h"

namespace top {

// Writes resolved_config.txt into dir and runs training there.
RunResult TrainRun(const RunConfig& config, const std::string& dir);

struct Variant {
  std::string name;
  std::vector<KeyValue> overrides;
};

// "name" or "name:key=value;key=value".
Variant ParseVariant(const std::string& text);

// Adaptive optimism with the configured arms, fixed beta = 0 and fixed
// beta = -1.
std::vector<Variant> AblationVariants();

struct SweepRunStatus {
  std::string variant;
  uint64_t seed = 0;
  std::string dir;
  bool ok = false;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRunStatus> runs;
  std::vector<AggregateRow> aggregate;

  bool all_ok() const;
};

// Runs every (variant, seed) pair into <out_dir>/<variant>/seed_<seed>
// and writes <out_dir>/aggregate.csv. Failed runs are recorded and the
// sweep continues. jobs > 1 runs independent runs on worker threads;
// TOP_DETERMINISTIC=1 in the environment forces jobs = 1.
SweepResult RunSweep(const RunConfig& base, const std::vector<uint64_t>& seeds,
                     const std::vector<Variant>& variants,
                     const std::string& out_dir, int jobs = 1);

// True when TOP_DETERMINISTIC=1 is set.
bool DeterministicMode();

}  // namespace top

#endif  // TOP_SWEEP_H_
