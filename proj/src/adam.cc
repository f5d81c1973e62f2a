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

#include "top/adam.h"

#include <cmath>
#include <string>

#include "top/errors.h"

namespace top {

void AdamStep(std::span<double> params, std::span<const double> grads,
              AdamState& state) {
  TOP_CHECK(params.size() == grads.size() && params.size() == state.m.size() &&
                params.size() == state.v.size(),
            "AdamStep: parameter, gradient and moment sizes differ");
  for (size_t i = 0; i < grads.size(); ++i) {
    if (!std::isfinite(grads[i])) {
      throw NumericError("AdamStep: non-finite gradient at index " +
                         std::to_string(i));
    }
  }
  const AdamOptions& o = state.options;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(o.beta1, t);
  const double c2 = 1.0 - std::pow(o.beta2, t);
  for (size_t i = 0; i < params.size(); ++i) {
    state.m[i] = o.beta1 * state.m[i] + (1.0 - o.beta1) * grads[i];
    state.v[i] = o.beta2 * state.v[i] + (1.0 - o.beta2) * grads[i] * grads[i];
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= o.lr * m_hat / (std::sqrt(v_hat) + o.eps);
  }
}

}  // namespace top
