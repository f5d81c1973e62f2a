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

// Plain-text run configuration: one "key = value" per line, '#' starts a
// comment, keys use at most one dotted namespace level (bandit.eta).
// Every key has a documented default; unknown keys are errors.

#ifndef TOP_CONFIG_H_
#define TOP_CONFIG_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "top/agent.h"

namespace top {

struct RunConfig {
  TrainConfig train;
  std::string run_name = "top";
  std::string out_dir = "runs/top";
  int64_t num_seeds = 1;
  // Rewrite metrics.csv every this many rows during a run; 0 = at the end.
  int64_t flush_interval = 0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

using KeyValue = std::pair<std::string, std::string>;

// Splits "key=value"; throws ConfigError when there is no '='.
KeyValue SplitAssignment(const std::string& text);

// Applies assignments in order onto config. Collects every problem
// (unknown key, malformed value, constraint violation) and throws a
// single ConfigError listing them all.
void ApplyAssignments(RunConfig& config, const std::vector<KeyValue>& kvs);

// Parses config text (file contents) into key/value pairs. Duplicate keys
// and lines without '=' are reported as errors.
std::vector<KeyValue> ParseConfigText(const std::string& text);

// Defaults, then the file (if any), then overrides; validated.
RunConfig LoadRunConfig(const std::optional<std::string>& path,
                        const std::vector<KeyValue>& overrides);

// Every key with its effective value, sorted by key; reals are printed
// with enough digits to round-trip exactly.
std::string FormatRunConfig(const RunConfig& config);

// Throws ConfigError listing every constraint violation.
void ValidateRunConfig(const RunConfig& config);

std::vector<std::string> ConfigKeys();

}  // namespace top

#endif  // TOP_CONFIG_H_
