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

#include "top/mlp.h"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "top/errors.h"

namespace top {
namespace {

uint64_t NextNetId() {
  static std::atomic<uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

Mlp::Mlp(std::vector<size_t> layer_sizes, OutputActivation output_activation)
    : layer_sizes_(std::move(layer_sizes)),
      output_activation_(output_activation),
      id_(NextNetId()) {
  TOP_CHECK(layer_sizes_.size() >= 2, "Mlp: need at least input and output");
  size_t total = 0;
  for (size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
    TOP_CHECK(layer_sizes_[l] > 0 && layer_sizes_[l + 1] > 0,
              "Mlp: layer sizes must be positive");
    offsets_.push_back(total);
    total += layer_sizes_[l + 1] * layer_sizes_[l] + layer_sizes_[l + 1];
  }
  params_.assign(total, 0.0);
}

Mlp::Mlp(const Mlp& other)
    : layer_sizes_(other.layer_sizes_),
      output_activation_(other.output_activation_),
      offsets_(other.offsets_),
      params_(other.params_),
      id_(NextNetId()) {}

Mlp& Mlp::operator=(const Mlp& other) {
  if (this == &other) return *this;
  layer_sizes_ = other.layer_sizes_;
  output_activation_ = other.output_activation_;
  offsets_ = other.offsets_;
  params_ = other.params_;
  ++version_;
  return *this;
}

void Mlp::InitFanIn(SeededRng& rng) {
  for (size_t l = 0; l < num_layers(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer_sizes_[l]));
    auto w = mutable_weight(l);
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      w.data()[i] = rng.Uniform(-bound, bound);
    }
    for (double& b : mutable_bias(l)) b = rng.Uniform(-bound, bound);
  }
  ++version_;
}

std::span<double> Mlp::mutable_params() {
  ++version_;
  return params_;
}

ConstMatMap Mlp::weight(size_t layer) const {
  return ConstMatMap(params_.data() + weight_offset(layer),
                     layer_sizes_[layer + 1], layer_sizes_[layer]);
}

MatMap Mlp::mutable_weight(size_t layer) {
  ++version_;
  return MatMap(params_.data() + weight_offset(layer), layer_sizes_[layer + 1],
                layer_sizes_[layer]);
}

std::span<const double> Mlp::bias(size_t layer) const {
  return {params_.data() + bias_offset(layer), layer_sizes_[layer + 1]};
}

std::span<double> Mlp::mutable_bias(size_t layer) {
  ++version_;
  return {params_.data() + bias_offset(layer), layer_sizes_[layer + 1]};
}

Mat Mlp::Forward(const Mat& input, MlpTape* tape) const {
  if (input.cols() != input_size()) {
    throw ContractError("Mlp::Forward: input has " +
                        std::to_string(input.cols()) + " columns, expected " +
                        std::to_string(input_size()));
  }
  if (tape != nullptr) {
    tape->net_id = id_;
    tape->net_version = version_;
    tape->activations.clear();
    tape->activations.reserve(num_layers() + 1);
    tape->activations.push_back(input);
  }
  Mat current = input;
  // Products are evaluated into Eigen-owned (fully aligned) storage so the
  // vectorization split, and hence rounding, does not depend on where the
  // caller's buffers happen to live.
  for (size_t l = 0; l < num_layers(); ++l) {
    RowMajorMatrix z = current.map() * weight(l).transpose();
    const Eigen::Map<const Eigen::RowVectorXd> b(bias(l).data(),
                                                 layer_sizes_[l + 1]);
    z.rowwise() += b;
    const bool last = l + 1 == num_layers();
    if (!last) {
      z = z.cwiseMax(0.0);
    } else if (output_activation_ == OutputActivation::kTanh) {
      z = z.unaryExpr([](double v) { return std::tanh(v); });
    }
    Mat next(input.rows(), layer_sizes_[l + 1]);
    next.map() = z;
    if (tape != nullptr) tape->activations.push_back(next);
    current = std::move(next);
  }
  return current;
}

std::vector<double> Mlp::Forward(std::span<const double> input) const {
  const Mat out = Forward(Mat::FromRow(input));
  return {out.data().begin(), out.data().end()};
}

MlpGradients Mlp::Backward(const MlpTape& tape, const Mat& output_grad,
                           bool param_grads) const {
  TOP_CHECK(tape.net_id == id_ && tape.net_version == version_ &&
                tape.activations.size() == num_layers() + 1,
            "Mlp::Backward: tape does not belong to this network state");
  const size_t batch = tape.activations.front().rows();
  TOP_CHECK(output_grad.rows() == batch && output_grad.cols() == output_size(),
            "Mlp::Backward: output gradient shape mismatch");

  MlpGradients grads;
  if (param_grads) grads.params.assign(params_.size(), 0.0);

  // delta holds dL/d(pre-activation) of the current layer.
  RowMajorMatrix delta = output_grad.map();
  if (output_activation_ == OutputActivation::kTanh) {
    const auto y = tape.activations.back().map().array();
    delta.array() *= 1.0 - y * y;
  }
  for (size_t l = num_layers(); l-- > 0;) {
    const ConstMatMap in = tape.activations[l].map();
    if (param_grads) {
      const RowMajorMatrix dw = delta.transpose() * in;
      std::copy(dw.data(), dw.data() + dw.size(),
                grads.params.begin() + weight_offset(l));
      const Eigen::RowVectorXd db = delta.colwise().sum();
      std::copy(db.data(), db.data() + db.size(),
                grads.params.begin() + bias_offset(l));
    }
    RowMajorMatrix prev = delta * weight(l);
    if (l > 0) {
      prev.array() *= (in.array() > 0.0).cast<double>();
    }
    delta = std::move(prev);
  }
  grads.input = Mat(batch, input_size());
  grads.input.map() = delta;
  return grads;
}

}  // namespace top
