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

#include "top/checkpoint.h"

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "top/agent.h"

namespace top {
namespace {

const char* const kBlockNames[] = {"policy",  "policy_target",
                                   "critic1", "critic2",
                                   "critic1_target", "critic2_target"};

std::string JoinSizes(const std::vector<size_t>& sizes) {
  std::string out;
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (i > 0) out += ':';
    out += std::to_string(sizes[i]);
  }
  return out;
}

std::vector<size_t> SplitSizes(const std::string& text) {
  std::vector<size_t> sizes;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ':')) {
    if (!part.empty()) sizes.push_back(std::stoul(part));
  }
  return sizes;
}

std::string BlobPath(const std::string& manifest_path) {
  return std::filesystem::path(manifest_path).replace_extension(".bin").string();
}

const char* ActivationName(OutputActivation a) {
  return a == OutputActivation::kTanh ? "tanh" : "identity";
}

}  // namespace

std::string CheckpointPath(const std::string& dir, int64_t step) {
  char name[64];
  std::snprintf(name, sizeof(name), "step_%08lld.manifest",
                static_cast<long long>(step));
  return (std::filesystem::path(dir) / name).string();
}

void WriteCheckpoint(const std::string& manifest_path, const Checkpoint& ckpt) {
  const std::string blob_path = BlobPath(manifest_path);
  std::ostringstream manifest;
  manifest << "format=" << kCheckpointFormat << '\n'
           << "step=" << ckpt.step << '\n'
           << "episode=" << ckpt.episode << '\n'
           << "encoding=float64-le\n"
           << "blob=" << std::filesystem::path(blob_path).filename().string()
           << '\n'
           << "blocks=" << ckpt.blocks.size() << '\n';
  size_t offset = 0;
  std::string blob;
  for (size_t b = 0; b < ckpt.blocks.size(); ++b) {
    const CheckpointBlock& block = ckpt.blocks[b];
    const std::string prefix = "block." + std::to_string(b) + '.';
    manifest << prefix << "name=" << block.name << '\n'
             << prefix << "layers=" << JoinSizes(block.layers) << '\n'
             << prefix << "activation=" << block.activation << '\n'
             << prefix << "count=" << block.values.size() << '\n'
             << prefix << "offset=" << offset << '\n';
    offset += block.values.size();
    for (double x : block.values) {
      const uint64_t bits = std::bit_cast<uint64_t>(x);
      for (int i = 0; i < 8; ++i) {
        blob.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
      }
    }
  }
  manifest << "total=" << offset << '\n';

  std::ofstream blob_out(blob_path, std::ios::binary | std::ios::trunc);
  blob_out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
  std::ofstream manifest_out(manifest_path, std::ios::binary | std::ios::trunc);
  manifest_out << manifest.str();
  if (!blob_out || !manifest_out) {
    throw std::runtime_error("failed writing checkpoint '" + manifest_path +
                             "'");
  }
}

Checkpoint ReadCheckpoint(const std::string& manifest_path) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + manifest_path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("malformed manifest line: '" + line + "'");
    }
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw std::runtime_error("manifest missing key '" + key + "'");
    }
    return it->second;
  };
  if (get("format") != kCheckpointFormat) {
    throw std::runtime_error("unsupported checkpoint format '" +
                             get("format") + "'");
  }
  if (get("encoding") != "float64-le") {
    throw std::runtime_error("unsupported encoding '" + get("encoding") + "'");
  }
  const size_t total = std::stoul(get("total"));
  const std::string blob_path =
      (std::filesystem::path(manifest_path).parent_path() / get("blob"))
          .string();
  std::ifstream blob_in(blob_path, std::ios::binary);
  if (!blob_in) throw std::runtime_error("cannot open '" + blob_path + "'");
  std::string blob((std::istreambuf_iterator<char>(blob_in)),
                   std::istreambuf_iterator<char>());
  if (blob.size() != total * 8) {
    throw std::runtime_error("checkpoint blob has " +
                             std::to_string(blob.size()) + " bytes, expected " +
                             std::to_string(total * 8));
  }

  Checkpoint ckpt;
  ckpt.step = std::stoll(get("step"));
  ckpt.episode = std::stoll(get("episode"));
  const size_t num_blocks = std::stoul(get("blocks"));
  for (size_t b = 0; b < num_blocks; ++b) {
    const std::string prefix = "block." + std::to_string(b) + '.';
    CheckpointBlock block;
    block.name = get(prefix + "name");
    block.layers = SplitSizes(get(prefix + "layers"));
    block.activation = get(prefix + "activation");
    const size_t count = std::stoul(get(prefix + "count"));
    const size_t offset = std::stoul(get(prefix + "offset"));
    if (offset + count > total) {
      throw std::runtime_error("block '" + block.name + "' exceeds blob");
    }
    block.values.resize(count);
    for (size_t i = 0; i < count; ++i) {
      uint64_t bits = 0;
      for (int byte = 0; byte < 8; ++byte) {
        bits |= static_cast<uint64_t>(
                    static_cast<unsigned char>(blob[(offset + i) * 8 + byte]))
                << (8 * byte);
      }
      block.values[i] = std::bit_cast<double>(bits);
    }
    ckpt.blocks.push_back(std::move(block));
  }
  return ckpt;
}

Checkpoint CaptureCheckpoint(const TopAgent& agent, int64_t step) {
  Checkpoint ckpt;
  ckpt.step = step;
  ckpt.episode = agent.episode();
  const std::vector<const Mlp*> nets = agent.networks();
  for (size_t i = 0; i < nets.size(); ++i) {
    CheckpointBlock block;
    block.name = kBlockNames[i];
    block.layers = nets[i]->layer_sizes();
    block.activation = ActivationName(nets[i]->output_activation());
    block.values.assign(nets[i]->params().begin(), nets[i]->params().end());
    ckpt.blocks.push_back(std::move(block));
  }
  CheckpointBlock weights;
  weights.name = "bandit_weights";
  weights.activation = "none";
  weights.values.assign(agent.bandit().weights().begin(),
                        agent.bandit().weights().end());
  ckpt.blocks.push_back(std::move(weights));
  return ckpt;
}

void RestoreCheckpoint(const Checkpoint& ckpt, TopAgent& agent) {
  std::vector<Mlp*> nets = agent.mutable_networks();
  if (ckpt.blocks.size() != nets.size() + 1) {
    throw std::runtime_error("checkpoint has " +
                             std::to_string(ckpt.blocks.size()) +
                             " blocks, expected " +
                             std::to_string(nets.size() + 1));
  }
  for (size_t i = 0; i < nets.size(); ++i) {
    const CheckpointBlock& block = ckpt.blocks[i];
    if (block.name != kBlockNames[i] ||
        block.layers != nets[i]->layer_sizes() ||
        block.activation != ActivationName(nets[i]->output_activation()) ||
        block.values.size() != nets[i]->num_params()) {
      throw std::runtime_error("checkpoint block '" + block.name +
                               "' does not match network '" + kBlockNames[i] +
                               "' (layers " + JoinSizes(block.layers) +
                               " vs " + JoinSizes(nets[i]->layer_sizes()) +
                               ")");
    }
    auto dst = nets[i]->mutable_params();
    std::copy(block.values.begin(), block.values.end(), dst.begin());
  }
  const CheckpointBlock& weights = ckpt.blocks.back();
  if (weights.name != "bandit_weights" ||
      weights.values.size() != agent.bandit().num_arms()) {
    throw std::runtime_error("checkpoint bandit weights do not match arms");
  }
  agent.mutable_bandit().set_weights(weights.values);
}

}  // namespace top
