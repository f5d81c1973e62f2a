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

// Epistemic statistics of a two-critic quantile ensemble and the
// beta-shifted belief distribution built from them.
//
//   q_bar  = (q1 + q2) / 2
//   sigma  = sqrt((q1 - q_bar)^2 + (q2 - q_bar)^2) = |q1 - q2| / sqrt(2)
//   q_tilde = q_bar + beta * sigma
//
// With this (unnormalized) spread, beta = -1/sqrt(2) gives the elementwise
// minimum of the two critics and beta = +1/sqrt(2) the maximum.

#ifndef TOP_UNCERTAINTY_H_
#define TOP_UNCERTAINTY_H_

#include <span>
#include <vector>

namespace top {

struct EpistemicStats {
  std::vector<double> q_bar;
  std::vector<double> sigma;
};

struct BeliefQuantiles {
  std::vector<double> q_tilde;
  double beta = 0.0;
};

EpistemicStats ComputeEpistemicStats(std::span<const double> q1,
                                     std::span<const double> q2);

BeliefQuantiles ComputeBelief(const EpistemicStats& stats, double beta);

double BeliefMean(const BeliefQuantiles& belief);

// Belief quantiles straight from the two critics' outputs, without
// materializing the stats. Writes K values into out.
void BeliefFromCritics(std::span<const double> q1, std::span<const double> q2,
                       double beta, std::span<double> out);

// Partial derivatives of the belief mean (1/K) sum_k q_tilde^(k) with
// respect to each critic's quantiles. Where q1 == q2 the spread term uses
// the zero subgradient.
void BeliefMeanGradient(std::span<const double> q1, std::span<const double> q2,
                        double beta, std::span<double> dq1,
                        std::span<double> dq2);

}  // namespace top

#endif  // TOP_UNCERTAINTY_H_
