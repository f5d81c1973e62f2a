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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "top/ndmath.h"
#include "top/uncertainty.h"

namespace top {
namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::vector<double> RandomVec(SeededRng& rng, size_t k) {
  std::vector<double> v(k);
  for (double& x : v) x = rng.Normal(0.0, 10.0);
  return v;
}

TEST(EpistemicStatsTest, Examples) {
  const EpistemicStats s = ComputeEpistemicStats(std::vector<double>{3.0},
                                                 std::vector<double>{1.0});
  EXPECT_EQ(s.q_bar[0], 2.0);
  EXPECT_NEAR(s.sigma[0], std::sqrt(2.0), 1e-12);

  const std::vector<double> q = {1.0, -2.0, 5.0};
  const EpistemicStats same = ComputeEpistemicStats(q, q);
  EXPECT_EQ(same.q_bar, q);
  EXPECT_EQ(same.sigma, std::vector<double>(3, 0.0));
}

TEST(EpistemicStatsTest, SwapInvariantAndBracketed) {
  SeededRng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const size_t k = 1 + rng.UniformIndex(50);
    const auto q1 = RandomVec(rng, k);
    const auto q2 = RandomVec(rng, k);
    const EpistemicStats a = ComputeEpistemicStats(q1, q2);
    const EpistemicStats b = ComputeEpistemicStats(q2, q1);
    ASSERT_EQ(a.q_bar, b.q_bar);
    ASSERT_EQ(a.sigma, b.sigma);
    for (size_t j = 0; j < k; ++j) {
      ASSERT_GE(a.sigma[j], 0.0);
      ASSERT_GE(a.q_bar[j], std::min(q1[j], q2[j]));
      ASSERT_LE(a.q_bar[j], std::max(q1[j], q2[j]));
    }
  }
}

TEST(BeliefTest, Examples) {
  const std::vector<double> q1 = {1.0, 2.0};
  const std::vector<double> q2 = {3.0, 0.0};
  const EpistemicStats s = ComputeEpistemicStats(q1, q2);
  EXPECT_EQ(ComputeBelief(s, 0.0).q_tilde, s.q_bar);
  const auto lo = ComputeBelief(s, -kInvSqrt2).q_tilde;
  EXPECT_NEAR(lo[0], 1.0, 1e-12);
  EXPECT_NEAR(lo[1], 0.0, 1e-12);
  const auto hi = ComputeBelief(s, kInvSqrt2).q_tilde;
  EXPECT_NEAR(hi[0], 3.0, 1e-12);
  EXPECT_NEAR(hi[1], 2.0, 1e-12);
}

TEST(BeliefTest, MinMaxRecovery) {
  SeededRng rng(2);
  for (size_t k : {1, 5, 50}) {
    for (int i = 0; i < 1000; ++i) {
      const auto q1 = RandomVec(rng, k);
      const auto q2 = RandomVec(rng, k);
      std::vector<double> lo(k);
      std::vector<double> hi(k);
      BeliefFromCritics(q1, q2, -kInvSqrt2, lo);
      BeliefFromCritics(q1, q2, kInvSqrt2, hi);
      for (size_t j = 0; j < k; ++j) {
        ASSERT_NEAR(lo[j], std::min(q1[j], q2[j]), 1e-12);
        ASSERT_NEAR(hi[j], std::max(q1[j], q2[j]), 1e-12);
      }
    }
  }
}

TEST(BeliefTest, FusedMatchesTwoStage) {
  SeededRng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto q1 = RandomVec(rng, 7);
    const auto q2 = RandomVec(rng, 7);
    const double beta = rng.Uniform(-2.0, 2.0);
    std::vector<double> fused(7);
    BeliefFromCritics(q1, q2, beta, fused);
    const auto staged = ComputeBelief(ComputeEpistemicStats(q1, q2), beta).q_tilde;
    for (size_t j = 0; j < 7; ++j) ASSERT_NEAR(fused[j], staged[j], 1e-12);
  }
}

TEST(BeliefTest, MonotoneInBeta) {
  SeededRng rng(4);
  for (int i = 0; i < 200; ++i) {
    const EpistemicStats s = ComputeEpistemicStats(RandomVec(rng, 6), RandomVec(rng, 6));
    const double b1 = rng.Uniform(-3.0, 3.0);
    const double b2 = b1 + rng.Uniform(0.0, 2.0);
    const auto lo = ComputeBelief(s, b1).q_tilde;
    const auto hi = ComputeBelief(s, b2).q_tilde;
    for (size_t j = 0; j < 6; ++j) ASSERT_LE(lo[j], hi[j]);
  }
}

TEST(BeliefTest, CollapsesForIdenticalCritics) {
  SeededRng rng(5);
  const auto q = RandomVec(rng, 9);
  const EpistemicStats s = ComputeEpistemicStats(q, q);
  EXPECT_EQ(ComputeBelief(s, -1.0).q_tilde, ComputeBelief(s, 0.7).q_tilde);
}

TEST(BeliefMeanTest, Examples) {
  EXPECT_EQ(BeliefMean({{1.0, 1.0, 1.0}, 0.0}), 1.0);
  EXPECT_EQ(BeliefMean({{0.0, 1.0}, 0.0}), 0.5);
}

TEST(BeliefMeanTest, LinearInBeta) {
  SeededRng rng(6);
  for (int i = 0; i < 100; ++i) {
    const EpistemicStats s = ComputeEpistemicStats(RandomVec(rng, 5), RandomVec(rng, 5));
    const double beta = rng.Uniform(-2.0, 2.0);
    double mean_q = 0.0;
    double mean_s = 0.0;
    for (size_t j = 0; j < 5; ++j) {
      mean_q += s.q_bar[j] / 5.0;
      mean_s += s.sigma[j] / 5.0;
    }
    EXPECT_NEAR(BeliefMean(ComputeBelief(s, beta)), mean_q + beta * mean_s, 1e-10);
  }
}

TEST(BeliefMeanTest, BalancedSyntheticEnsemble) {
  // q_i = q* + eps_i * s* with eps = (+1, -1).
  SeededRng rng(7);
  for (int i = 0; i < 100; ++i) {
    const double q_star = rng.Normal(0.0, 5.0);
    const double s_star = std::abs(rng.Normal(0.0, 2.0));
    const double sign = rng.Uniform() < 0.5 ? 1.0 : -1.0;
    const EpistemicStats s = ComputeEpistemicStats(
        std::vector<double>{q_star + sign * s_star},
        std::vector<double>{q_star - sign * s_star});
    EXPECT_NEAR(s.q_bar[0], q_star, 1e-12);
    EXPECT_NEAR(s.sigma[0], std::sqrt(2.0) * s_star, 1e-12);
  }
}

TEST(BeliefMeanGradientTest, MatchesFiniteDifferences) {
  SeededRng rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto q1 = RandomVec(rng, 4);
    const auto q2 = RandomVec(rng, 4);
    const double beta = rng.Uniform(-1.5, 1.5);
    std::vector<double> d1(4);
    std::vector<double> d2(4);
    BeliefMeanGradient(q1, q2, beta, d1, d2);
    auto mean = [&](const std::vector<double>& a, const std::vector<double>& b) {
      return BeliefMean(ComputeBelief(ComputeEpistemicStats(a, b), beta));
    };
    for (size_t j = 0; j < 4; ++j) {
      const double h = 1e-6;
      auto p = q1;
      auto m = q1;
      p[j] += h;
      m[j] -= h;
      EXPECT_NEAR(d1[j], (mean(p, q2) - mean(m, q2)) / (2 * h), 1e-6);
      p = q2;
      m = q2;
      p[j] += h;
      m[j] -= h;
      EXPECT_NEAR(d2[j], (mean(q1, p) - mean(q1, m)) / (2 * h), 1e-6);
    }
  }
}

}  // namespace
}  // namespace top
