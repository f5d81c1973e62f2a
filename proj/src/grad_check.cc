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

#include "top/grad_check.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "top/errors.h"

namespace top {

double MaxRelativeError(std::span<const double> analytic,
                        std::span<const double> numeric) {
  TOP_CHECK(analytic.size() == numeric.size(),
            "MaxRelativeError: size mismatch");
  double worst = 0.0;
  for (size_t i = 0; i < analytic.size(); ++i) {
    const double a = analytic[i];
    const double n = numeric[i];
    const double err =
        std::abs(a - n) / std::max(1.0, std::abs(a) + std::abs(n));
    // NaN must not be swallowed by max.
    if (!(err <= worst)) worst = err;
  }
  return worst;
}

double GradCheck(const Mlp& net, const OutputLoss& loss, SeededRng& rng,
                 double step) {
  Mat input(1, net.input_size());
  for (double& x : input.data()) x = rng.Uniform(-1.0, 1.0);

  std::vector<double> out_grad(net.output_size());
  auto eval = [&](const Mlp& m) {
    const Mat out = m.Forward(input);
    return loss(out.row(0), out_grad);
  };

  MlpTape tape;
  const Mat out = net.Forward(input, &tape);
  Mat dout(1, net.output_size());
  loss(out.row(0), dout.row(0));
  const MlpGradients analytic = net.Backward(tape, dout);

  Mlp probe = net;
  std::vector<double> numeric(net.num_params());
  for (size_t i = 0; i < net.num_params(); ++i) {
    const double saved = probe.params()[i];
    probe.mutable_params()[i] = saved + step;
    const double plus = eval(probe);
    probe.mutable_params()[i] = saved - step;
    const double minus = eval(probe);
    probe.mutable_params()[i] = saved;
    numeric[i] = (plus - minus) / (2.0 * step);
  }
  return MaxRelativeError(analytic.params, numeric);
}

}  // namespace top
