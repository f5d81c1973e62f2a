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

#ifndef TOP_GRAD_CHECK_H_
#define TOP_GRAD_CHECK_H_

#include <functional>
#include <span>

#include "top/mlp.h"
#include "top/ndmath.h"

namespace top {

// Scalar loss of a network output row. Writes dLoss/dOutput into grad and
// returns the loss value.
using OutputLoss =
    std::function<double(std::span<const double> output, std::span<double> grad)>;

// Compares Backward against central differences at an input drawn from
// U(-1, 1). Returns max over parameters of
// |analytic - numeric| / max(1, |analytic| + |numeric|).
double GradCheck(const Mlp& net, const OutputLoss& loss, SeededRng& rng,
                 double step = 1e-5);

// Same relative-error measure for two gradient vectors.
double MaxRelativeError(std::span<const double> analytic,
                        std::span<const double> numeric);

}  // namespace top

#endif  // TOP_GRAD_CHECK_H_
