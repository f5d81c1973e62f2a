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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "top/bandit.h"
#include "top/errors.h"
#include "top/ndmath.h"

namespace top {
namespace {

std::vector<double> ToVec(std::span<const double> s) { return {s.begin(), s.end()}; }

TEST(BanditProbsTest, Examples) {
  OptimismBandit b;
  EXPECT_EQ(b.Probs(), std::vector<double>({0.5, 0.5}));
  b.set_weights(std::vector<double>{0.4, 0.0});
  const double e = std::exp(0.4);
  const auto p = b.Probs();
  EXPECT_NEAR(p[0], e / (e + 1.0), 1e-15);
  EXPECT_NEAR(p[0], 0.5987, 1e-4);
  EXPECT_NEAR(p[1], 0.4013, 1e-4);
}

TEST(BanditProbsTest, ShiftInvariant) {
  OptimismBandit b({.arms = {-1.0, -0.5, 0.0}});
  b.set_weights(std::vector<double>{0.3, -1.2, 2.0});
  const auto p = b.Probs();
  b.set_weights(std::vector<double>{10.3, 8.8, 12.0});
  const auto q = b.Probs();
  for (size_t i = 0; i < 3; ++i) EXPECT_NEAR(p[i], q[i], 1e-15);
  double total = 0.0;
  for (double x : p) total += x;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(BanditProbsTest, NeverZeroAtClipBounds) {
  OptimismBandit b;
  b.set_weights(std::vector<double>{1e9, -1e9});
  EXPECT_EQ(ToVec(b.weights()), std::vector<double>({50.0, -50.0}));
  EXPECT_GT(b.Probs()[1], 0.0);
}

TEST(BanditSampleTest, ClipBoundFavoursArmZero) {
  OptimismBandit b;
  b.set_weights(std::vector<double>{50.0, -50.0});
  SeededRng rng(1);
  int zeros = 0;
  for (int i = 0; i < 10000; ++i) zeros += b.SampleArm(rng).arm == 0;
  EXPECT_GE(zeros / 10000.0, 0.99);
}

TEST(BanditSampleTest, SingletonAlwaysArmZero) {
  OptimismBandit b({.arms = {0.0}});
  SeededRng rng(2);
  for (int i = 0; i < 100; ++i) {
    const ArmDraw d = b.SampleArm(rng);
    ASSERT_EQ(d.arm, 0u);
    ASSERT_EQ(d.beta, 0.0);
  }
}

TEST(BanditSampleTest, DeterministicAndRecordsProbs) {
  OptimismBandit a;
  OptimismBandit b;
  a.set_weights(std::vector<double>{0.3, -0.1});
  b.set_weights(std::vector<double>{0.3, -0.1});
  SeededRng ra(3);
  SeededRng rb(3);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.SampleArm(ra).arm, b.SampleArm(rb).arm);
  EXPECT_EQ(ToVec(a.last_probs()), a.Probs());
}

TEST(BanditUpdateTest, WorkedExample) {
  OptimismBandit b;
  SeededRng rng(4);
  b.SampleArm(rng);  // records p = (0.5, 0.5)
  b.ApplyFeedback(0, 2.0);
  EXPECT_NEAR(b.weights()[0], 0.4, 1e-12);
  EXPECT_EQ(b.weights()[1], 0.0);
  EXPECT_NEAR(b.Probs()[0], 0.5987, 1e-4);
}

TEST(BanditUpdateTest, FirstEpisodeOnlyRecords) {
  OptimismBandit b;
  SeededRng rng(5);
  const ArmDraw d = b.SampleArm(rng);
  EXPECT_FALSE(b.Update({-10.0, d.arm}).has_value());
  EXPECT_EQ(ToVec(b.weights()), std::vector<double>({0.0, 0.0}));
  EXPECT_EQ(b.prev_return(), -10.0);
}

TEST(BanditUpdateTest, ZeroImprovementLeavesWeights) {
  OptimismBandit b;
  SeededRng rng(6);
  b.SampleArm(rng);
  b.Update({5.0, 0});
  const ArmDraw d = b.SampleArm(rng);
  EXPECT_EQ(b.Update({5.0, d.arm}), 0.0);
  EXPECT_EQ(ToVec(b.weights()), std::vector<double>({0.0, 0.0}));
}

TEST(BanditUpdateTest, NegativeImprovementLowersChosenArm) {
  OptimismBandit b;
  SeededRng rng(7);
  b.SampleArm(rng);
  b.Update({5.0, 0});
  const ArmDraw d = b.SampleArm(rng);
  const double before = b.Probs()[d.arm];
  const auto f = b.Update({3.0, d.arm});
  ASSERT_TRUE(f.has_value());
  EXPECT_LT(*f, 0.0);
  EXPECT_LT(b.Probs()[d.arm], before);
}

TEST(BanditUpdateTest, NormalisationScaleAndClip) {
  OptimismBandit b;
  // The first magnitude seeds the scale, so the first feedback is +-1.
  EXPECT_DOUBLE_EQ(b.NormalizeFeedback(-40.0), -1.0);
  const double alpha = 1.0 - std::exp2(-1.0 / 20.0);
  const double scale = (1.0 - alpha) * 40.0 + alpha * 400.0;
  EXPECT_DOUBLE_EQ(*b.feedback_scale(), 40.0);
  EXPECT_DOUBLE_EQ(b.NormalizeFeedback(400.0), 3.0);
  EXPECT_DOUBLE_EQ(*b.feedback_scale(), scale);
  EXPECT_NEAR(b.NormalizeFeedback(10.0),
              10.0 / ((1.0 - alpha) * scale + alpha * 10.0), 1e-15);
}

TEST(BanditUpdateTest, NonFiniteReturnRejected) {
  OptimismBandit b;
  SeededRng rng(8);
  b.SampleArm(rng);
  b.Update({1.0, 0});
  b.SampleArm(rng);
  EXPECT_THROW(b.Update({std::nan(""), 0}), NumericError);
  EXPECT_EQ(b.prev_return(), 1.0);
  EXPECT_EQ(ToVec(b.weights()), std::vector<double>({0.0, 0.0}));
}

TEST(BanditUpdateTest, WeightsStayClipped) {
  OptimismBandit b;
  SeededRng rng(9);
  b.SampleArm(rng);
  for (int i = 0; i < 10000; ++i) {
    b.SampleArm(rng);
    b.ApplyFeedback(0, 3.0);
    b.ApplyFeedback(1, -3.0);
    ASSERT_LE(std::abs(b.weights()[0]), 50.0);
    ASSERT_LE(std::abs(b.weights()[1]), 50.0);
  }
}

TEST(BanditUpdateTest, ConcentratesOnBetterArm) {
  double mean_p = 0.0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    OptimismBandit b;
    SeededRng rng(seed);
    for (int m = 0; m < 200; ++m) {
      const ArmDraw d = b.SampleArm(rng);
      const double f = (d.arm == 1 ? 1.0 : 0.0) + rng.Normal(0.0, 0.3);
      const auto before = ToVec(b.weights());
      b.ApplyFeedback(d.arm, f);
      const size_t other = 1 - d.arm;
      ASSERT_EQ(b.weights()[other], before[other]);
    }
    mean_p += b.Probs()[1] / 20.0;
  }
  EXPECT_GT(mean_p, 0.8);
}

TEST(BanditEstimatorTest, ImportanceWeightIsUnbiased) {
  OptimismBandit b;
  b.set_weights(std::vector<double>{std::log(0.3), std::log(0.7)});
  SeededRng rng(10);
  const int n = 100000;
  double estimate = 0.0;
  for (int i = 0; i < n; ++i) {
    const ArmDraw d = b.SampleArm(rng);
    const double f = d.arm == 0 ? rng.Normal(2.0, 1.0) : rng.Normal(-1.0, 1.0);
    if (d.arm == 0) estimate += f / b.last_probs()[0];
  }
  estimate /= n;
  EXPECT_LT(std::abs(estimate - 2.0) / 2.0, 0.05);
}

}  // namespace
}  // namespace top
