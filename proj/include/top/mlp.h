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

// Fully connected networks with ReLU hidden layers and reverse-mode
// gradients. A forward pass over a batch (one sample per row) optionally
// records a tape; the tape is consumed by Backward and must come from the
// same network in the same parameter state.

#ifndef TOP_MLP_H_
#define TOP_MLP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "top/ndmath.h"

namespace top {

enum class OutputActivation { kIdentity, kTanh };

struct MlpTape {
  uint64_t net_id = 0;
  uint64_t net_version = 0;
  // activations[0] is the input batch; activations[l + 1] is the
  // post-activation output of layer l.
  std::vector<Mat> activations;
};

struct MlpGradients {
  // Same layout as Mlp::params(); summed over the batch rows. Empty when
  // parameter gradients were not requested.
  std::vector<double> params;
  // Gradient with respect to each input row.
  Mat input;
};

class Mlp {
 public:
  // layer_sizes = {input, hidden..., output}; at least two entries.
  Mlp(std::vector<size_t> layer_sizes, OutputActivation output_activation);

  Mlp(const Mlp& other);
  Mlp& operator=(const Mlp& other);
  Mlp(Mlp&& other) noexcept = default;
  Mlp& operator=(Mlp&& other) noexcept = default;

  // Weights and biases ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
  void InitFanIn(SeededRng& rng);

  const std::vector<size_t>& layer_sizes() const { return layer_sizes_; }
  size_t num_layers() const { return layer_sizes_.size() - 1; }
  size_t input_size() const { return layer_sizes_.front(); }
  size_t output_size() const { return layer_sizes_.back(); }
  OutputActivation output_activation() const { return output_activation_; }

  // Flat parameter vector: for each layer, the weight matrix of shape
  // (layer_sizes[l+1], layer_sizes[l]) in row-major order, then the bias.
  size_t num_params() const { return params_.size(); }
  std::span<const double> params() const { return params_; }
  // Invalidates outstanding tapes.
  std::span<double> mutable_params();

  ConstMatMap weight(size_t layer) const;
  MatMap mutable_weight(size_t layer);
  std::span<const double> bias(size_t layer) const;
  std::span<double> mutable_bias(size_t layer);

  Mat Forward(const Mat& input, MlpTape* tape = nullptr) const;
  std::vector<double> Forward(std::span<const double> input) const;

  MlpGradients Backward(const MlpTape& tape, const Mat& output_grad,
                        bool param_grads = true) const;

 private:
  size_t weight_offset(size_t layer) const { return offsets_[layer]; }
  size_t bias_offset(size_t layer) const {
    return offsets_[layer] + layer_sizes_[layer + 1] * layer_sizes_[layer];
  }

  std::vector<size_t> layer_sizes_;
  OutputActivation output_activation_;
  std::vector<size_t> offsets_;
  std::vector<double> params_;
  uint64_t id_;
  uint64_t version_ = 0;
};

}  // namespace top

#endif  // TOP_MLP_H_
