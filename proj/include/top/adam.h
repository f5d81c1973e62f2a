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

#ifndef TOP_ADAM_H_
#define TOP_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

namespace top {

struct AdamOptions {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  AdamState() = default;
  AdamState(size_t num_params, AdamOptions options)
      : options(options), m(num_params, 0.0), v(num_params, 0.0) {}

  AdamOptions options;
  int64_t step = 0;
  std::vector<double> m;
  std::vector<double> v;
};

// One bias-corrected Adam descent step. Throws NumericError and leaves
// params and state untouched if any gradient is non-finite.
void AdamStep(std::span<double> params, std::span<const double> grads,
              AdamState& state);

}  // namespace top

#endif  // TOP_ADAM_H_
