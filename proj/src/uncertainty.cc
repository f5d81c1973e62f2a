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

#include "top/uncertainty.h"

#include <cmath>
#include <numbers>

#include "top/errors.h"

namespace top {
namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

EpistemicStats ComputeEpistemicStats(std::span<const double> q1,
                                     std::span<const double> q2) {
  TOP_CHECK(q1.size() == q2.size(), "ComputeEpistemicStats: K mismatch");
  EpistemicStats stats;
  stats.q_bar.resize(q1.size());
  stats.sigma.resize(q1.size());
  for (size_t k = 0; k < q1.size(); ++k) {
    const double mean = 0.5 * (q1[k] + q2[k]);
    const double d1 = q1[k] - mean;
    const double d2 = q2[k] - mean;
    stats.q_bar[k] = mean;
    stats.sigma[k] = std::sqrt(d1 * d1 + d2 * d2);
  }
  return stats;
}

BeliefQuantiles ComputeBelief(const EpistemicStats& stats, double beta) {
  TOP_CHECK(stats.q_bar.size() == stats.sigma.size(),
            "ComputeBelief: malformed stats");
  BeliefQuantiles belief;
  belief.beta = beta;
  belief.q_tilde.resize(stats.q_bar.size());
  for (size_t k = 0; k < stats.q_bar.size(); ++k) {
    belief.q_tilde[k] = stats.q_bar[k] + beta * stats.sigma[k];
  }
  return belief;
}

double BeliefMean(const BeliefQuantiles& belief) {
  TOP_CHECK(!belief.q_tilde.empty(), "BeliefMean: K must be at least 1");
  double sum = 0.0;
  for (double q : belief.q_tilde) sum += q;
  return sum / static_cast<double>(belief.q_tilde.size());
}

void BeliefFromCritics(std::span<const double> q1, std::span<const double> q2,
                       double beta, std::span<double> out) {
  TOP_CHECK(q1.size() == q2.size() && out.size() == q1.size(),
            "BeliefFromCritics: K mismatch");
  for (size_t k = 0; k < q1.size(); ++k) {
    const double mean = 0.5 * (q1[k] + q2[k]);
    const double d1 = q1[k] - mean;
    const double d2 = q2[k] - mean;
    out[k] = mean + beta * std::sqrt(d1 * d1 + d2 * d2);
  }
}

void BeliefMeanGradient(std::span<const double> q1, std::span<const double> q2,
                        double beta, std::span<double> dq1,
                        std::span<double> dq2) {
  const size_t num = q1.size();
  TOP_CHECK(q2.size() == num && dq1.size() == num && dq2.size() == num,
            "BeliefMeanGradient: K mismatch");
  const double inv_k = 1.0 / static_cast<double>(num);
  for (size_t k = 0; k < num; ++k) {
    const double diff = q1[k] - q2[k];
    const double sign = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
    // d sigma / d q1 = sign(q1 - q2) / sqrt(2); opposite for q2.
    dq1[k] = inv_k * (0.5 + beta * sign * kInvSqrt2);
    dq2[k] = inv_k * (0.5 - beta * sign * kInvSqrt2);
  }
}

}  // namespace top
