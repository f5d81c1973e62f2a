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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "top/agent.h"
#include "top/errors.h"

namespace top {
namespace {

namespace fs = std::filesystem;

std::vector<double> ToVec(std::span<const double> s) { return {s.begin(), s.end()}; }

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("top_agent_" + name);
  fs::remove_all(dir);
  return dir;
}

TrainConfig SmallConfig() {
  TrainConfig c;
  c.hidden = {16};
  c.num_quantiles = 5;
  c.batch_size = 16;
  c.total_steps = 600;
  c.random_action_steps = 100;
  c.collection_steps = 50;
  c.eval_interval = 300;
  c.eval_episodes = 2;
  return c;
}

// Drives the agent for `steps` steps, closing episodes as they end.
std::vector<StepMetrics> Drive(TopAgent& agent, int64_t from, int64_t steps) {
  std::vector<StepMetrics> out;
  for (int64_t t = from; t < from + steps; ++t) {
    out.push_back(agent.TrainStep(t));
    if (out.back().episode_done) agent.EndEpisode();
  }
  return out;
}

TEST(PolyakTest, Examples) {
  std::vector<double> target = {0.0, 1.0};
  const std::vector<double> live = {2.0, -1.0};
  Polyak(target, live, 1.0);
  EXPECT_EQ(target, live);
  target = {0.0, 1.0};
  Polyak(target, live, 0.0);
  EXPECT_EQ(target, std::vector<double>({0.0, 1.0}));
  Polyak(target, live, 0.005);
  EXPECT_NEAR(target[0], 0.01, 1e-15);
  EXPECT_NEAR(target[1], 0.99, 1e-15);
}

TEST(TrainConfigTest, ValidationListsEveryProblem) {
  EXPECT_TRUE(ValidateTrainConfig(TrainConfig{}).empty());
  TrainConfig bad;
  bad.gamma = 1.5;
  bad.polyak_tau = 0.0;
  bad.policy_delay = 0;
  bad.env = "nowhere";
  const auto errors = ValidateTrainConfig(bad);
  EXPECT_EQ(errors.size(), 4u);
  EXPECT_THROW(TopAgent{bad}, ConfigError);
  TrainConfig zero_gamma;
  zero_gamma.gamma = 0.0;
  EXPECT_TRUE(ValidateTrainConfig(zero_gamma).empty());
}

TEST(TopAgentTest, TargetsStartAsCopies) {
  const TopAgent agent(SmallConfig());
  EXPECT_EQ(ToVec(agent.policy().net().params()),
            ToVec(agent.policy_target().net().params()));
  EXPECT_EQ(ToVec(agent.critics().c1.net().params()),
            ToVec(agent.critics().t1.net().params()));
  EXPECT_EQ(ToVec(agent.critics().c2.net().params()),
            ToVec(agent.critics().t2.net().params()));
}

TEST(TopAgentTest, WarmupGating) {
  TopAgent agent(SmallConfig());
  const auto policy0 = ToVec(agent.policy().net().params());
  const auto critic0 = ToVec(agent.critics().c1.net().params());
  const auto target0 = ToVec(agent.critics().t1.net().params());
  auto steps = Drive(agent, 0, 50);
  EXPECT_EQ(ToVec(agent.critics().c1.net().params()), critic0);
  EXPECT_EQ(agent.critic_updates(), 0);
  steps = Drive(agent, 50, 50);
  EXPECT_NE(ToVec(agent.critics().c1.net().params()), critic0);
  EXPECT_EQ(ToVec(agent.critics().t1.net().params()), target0);
  EXPECT_EQ(ToVec(agent.policy().net().params()), policy0);
  EXPECT_EQ(agent.critic_updates(), 50);
  EXPECT_EQ(agent.actor_updates(), 0);
  Drive(agent, 100, 2);
  EXPECT_NE(ToVec(agent.policy().net().params()), policy0);
  EXPECT_EQ(agent.actor_updates(), 1);
}

TEST(TopAgentTest, DelayOfOneUpdatesEveryStep) {
  TrainConfig c = SmallConfig();
  c.policy_delay = 1;
  c.random_action_steps = 0;
  c.collection_steps = 0;
  TopAgent agent(c);
  for (int64_t t = 0; t < 20; ++t) {
    const auto target = ToVec(agent.policy_target().net().params());
    const StepMetrics m = agent.TrainStep(t);
    EXPECT_TRUE(m.actor_updated);
    EXPECT_NE(ToVec(agent.policy_target().net().params()), target);
  }
  EXPECT_EQ(agent.actor_updates(), 20);
}

TEST(TopAgentTest, UpdateRatioAndTargetLag) {
  TrainConfig c = SmallConfig();
  c.random_action_steps = 0;
  c.collection_steps = 0;
  TopAgent agent(c);
  const double tau = c.polyak_tau;
  for (int64_t t = 0; t < 200; ++t) {
    const auto before = ToVec(agent.critics().t1.net().params());
    const StepMetrics m = agent.TrainStep(t);
    if (m.episode_done) agent.EndEpisode();
    const auto live = ToVec(agent.critics().c1.net().params());
    const auto after = ToVec(agent.critics().t1.net().params());
    for (size_t i = 0; i < after.size(); ++i) {
      ASSERT_LE(std::abs(after[i] - before[i]),
                tau * std::abs(live[i] - before[i]) + 1e-15);
    }
  }
  EXPECT_EQ(agent.critic_updates(), 200);
  EXPECT_EQ(agent.actor_updates(), 100);
}

TEST(TopAgentTest, BetaConstantWithinEpisodes) {
  TrainConfig c = SmallConfig();
  c.env = "pointmass";
  TopAgent agent(c);
  double beta = agent.beta();
  std::vector<double> seen;
  for (int64_t t = 0; t < 1500; ++t) {
    const StepMetrics m = agent.TrainStep(t);
    ASSERT_EQ(m.beta, beta);
    if (m.episode_done) {
      agent.EndEpisode();
      beta = agent.beta();
      seen.push_back(beta);
    }
  }
  EXPECT_EQ(seen.size(), 10u);
}

TEST(TopAgentTest, DeterministicStepStream) {
  auto run = [] {
    TopAgent agent(SmallConfig());
    std::vector<double> stream;
    for (const StepMetrics& m : Drive(agent, 0, 450)) {
      stream.insert(stream.end(), {m.reward, m.beta, m.critic_loss_1,
                                   m.critic_loss_2, m.actor_objective,
                                   m.mean_sigma});
    }
    stream.push_back(agent.Evaluate(2));
    return stream;
  };
  EXPECT_EQ(run(), run());
}

TEST(TopAgentTest, FirstEpisodeAndZeroImprovementKeepWeights) {
  TrainConfig c = SmallConfig();
  c.env = "diag-const";
  TopAgent agent(c);
  agent.TrainStep(0);
  const EpisodeMetrics first = agent.EndEpisode();
  EXPECT_FALSE(first.feedback.has_value());
  EXPECT_EQ(ToVec(agent.bandit().weights()), std::vector<double>({0.0, 0.0}));
  for (int64_t t = 1; t < 50; ++t) {
    agent.TrainStep(t);
    const EpisodeMetrics em = agent.EndEpisode();
    ASSERT_EQ(em.feedback, 0.0);
  }
  EXPECT_EQ(ToVec(agent.bandit().weights()), std::vector<double>({0.0, 0.0}));
}

TEST(OptimismLevelTest, Encoding) {
  const std::vector<double> two = {-1.0, 0.0};
  EXPECT_EQ(OptimismLevel(two, 0), 0.0);
  EXPECT_EQ(OptimismLevel(two, 1), 1.0);
  const std::vector<double> three = {-1.0, -0.5, 0.0};
  EXPECT_EQ(OptimismLevel(three, 1), 0.5);
  EXPECT_EQ(OptimismLevel(std::vector<double>{0.0}, 0), 1.0);
  EXPECT_EQ(OptimismLevel(std::vector<double>{-1.0}, 0), 0.0);
}

TEST(RunTrainingTest, ZeroStepsWritesOnlyInitialCheckpoint) {
  TrainConfig c = SmallConfig();
  c.total_steps = 0;
  const fs::path dir = FreshDir("zero");
  const RunResult r = RunTraining(c, dir.string());
  EXPECT_TRUE(r.metrics.empty());
  EXPECT_FALSE(r.aborted);
  std::vector<std::string> ckpts;
  for (const auto& e : fs::directory_iterator(dir / "checkpoints")) {
    ckpts.push_back(e.path().filename().string());
  }
  std::sort(ckpts.begin(), ckpts.end());
  EXPECT_EQ(ckpts, std::vector<std::string>(
                       {"step_00000000.bin", "step_00000000.manifest"}));
  const std::string csv = ReadFile(dir / "metrics.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
}

TEST(RunTrainingTest, OptimismTraceBoundedAndMetricsByteIdentical) {
  TrainConfig c = SmallConfig();
  c.env = "pointmass";
  c.total_steps = 900;
  const fs::path a = FreshDir("det_a");
  const fs::path b = FreshDir("det_b");
  const RunResult ra = RunTraining(c, a.string());
  RunTraining(c, b.string());
  EXPECT_EQ(ReadFile(a / "metrics.csv"), ReadFile(b / "metrics.csv"));
  EXPECT_EQ(ReadFile(a / "optimism_trace.csv"), ReadFile(b / "optimism_trace.csv"));
  EXPECT_EQ(ra.trace.size(), 6u);
  for (const OptimismTraceRow& row : ra.trace) {
    EXPECT_GE(row.optimism, 0.0);
    EXPECT_LE(row.optimism, 1.0);
  }
  EXPECT_TRUE(fs::exists(a / "checkpoints" / "step_00000900.manifest"));
}

TEST(RunTrainingTest, DiagConstantCriticConvergesToReward) {
  TrainConfig c = SmallConfig();
  c.env = "diag-const";
  c.gamma = 0.0;
  c.diag_constant = 1.0;
  c.critic_lr = 1e-3;
  c.total_steps = 2000;
  c.eval_interval = 1000;
  TopAgent agent(c);
  Drive(agent, 0, c.total_steps);
  EXPECT_DOUBLE_EQ(agent.Evaluate(5), 1.0);
  const std::vector<double> s = {1.0};
  const auto a = agent.policy().Act(s);
  for (const QuantileCritic* critic : {&agent.critics().c1, &agent.critics().c2}) {
    for (double q : critic->PredictQuantiles(s, a)) EXPECT_NEAR(q, 1.0, 0.05);
  }
}

}  // namespace
}  // namespace top
