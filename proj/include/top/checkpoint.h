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

// Checkpoint format: a text manifest of key=value lines describing each
// parameter block (name, layer sizes, count, offset), plus a binary blob
// of little-endian IEEE-754 doubles in block order. The manifest carries
// a format tag so readers can reject files they do not understand.

#ifndef TOP_CHECKPOINT_H_
#define TOP_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <vector>

namespace top {

class TopAgent;

inline constexpr char kCheckpointFormat[] = "top-checkpoint-v1";

struct CheckpointBlock {
  std::string name;
  // Empty for non-network blocks.
  std::vector<size_t> layers;
  std::string activation;
  std::vector<double> values;
};

struct Checkpoint {
  int64_t step = 0;
  int64_t episode = 0;
  std::vector<CheckpointBlock> blocks;
};

// Writes <manifest_path> and the blob next to it (same stem, ".bin").
void WriteCheckpoint(const std::string& manifest_path, const Checkpoint& ckpt);
// Throws std::runtime_error on a missing file, unknown format tag, or a
// blob whose size disagrees with the manifest.
Checkpoint ReadCheckpoint(const std::string& manifest_path);

Checkpoint CaptureCheckpoint(const TopAgent& agent, int64_t step);
// Copies parameters into agent; shapes must match exactly.
void RestoreCheckpoint(const Checkpoint& ckpt, TopAgent& agent);

// <dir>/step_<8-digit step>.manifest
std::string CheckpointPath(const std::string& dir, int64_t step);

}  // namespace top

#endif  // TOP_CHECKPOINT_H_
