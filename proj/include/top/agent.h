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

// Training loop: warmup, per-episode optimism sampling, per-step critic
// updates, delayed actor and target updates, and end-of-episode bandit
// updates.

#ifndef TOP_AGENT_H_
#define TOP_AGENT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "top/actor.h"
#include "top/adam.h"
#include "top/bandit.h"
#include "top/distcritic.h"
#include "top/envs.h"
#include "top/metrics.h"
#include "top/ndmath.h"
#include "top/replay.h"

namespace top {

struct TrainConfig {
  std::string env = "pendulum";
  uint64_t seed = 0;
  double gamma = 0.99;
  double polyak_tau = 5e-3;
  int64_t policy_delay = 2;
  int64_t batch_size = 256;
  int64_t total_steps = 50000;
  int64_t random_action_steps = 1000;
  int64_t collection_steps = 200;
  int64_t replay_capacity = 100000;
  std::vector<size_t> hidden = {64, 64};
  int64_t num_quantiles = 25;
  double kappa = 1.0;
  double actor_lr = 3e-4;
  double critic_lr = 3e-4;
  NoiseSpec noise;
  std::vector<double> beta_options = {-1.0, 0.0};
  double bandit_eta = 0.1;
  double reward_noise_std = 0.0;
  double diag_constant = 1.0;
  Integrator integrator = Integrator::kExplicitEuler;
  int64_t eval_interval = 5000;
  int64_t eval_episodes = 10;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// Every constraint violation, one message per entry; empty when valid.
std::vector<std::string> ValidateTrainConfig(const TrainConfig& config);

// target <- tau * live + (1 - tau) * target, elementwise.
void Polyak(std::span<double> target, std::span<const double> live,
            double tau);

struct StepMetrics {
  int64_t step = 0;
  int64_t episode = 0;
  size_t arm = 0;
  double beta = 0.0;
  double reward = 0.0;
  bool critic_updated = false;
  bool actor_updated = false;
  double critic_loss_1 = 0.0;
  double critic_loss_2 = 0.0;
  double actor_objective = 0.0;
  double mean_sigma = 0.0;
  bool episode_done = false;
};

struct EpisodeMetrics {
  int64_t episode = 0;
  double episode_return = 0.0;
  size_t arm = 0;
  double beta = 0.0;
  // Probabilities the arm was drawn with.
  std::vector<double> probs;
  std::optional<double> feedback;
};

class TopAgent {
 public:
  // Validates the config (ConfigError listing every problem), builds the
  // networks, resets the environment and draws the first optimism arm.
  explicit TopAgent(const TrainConfig& config);

  const TrainConfig& config() const { return config_; }

  // One environment step at global step t, followed by whichever updates
  // are due.
  StepMetrics TrainStep(int64_t t);

  // Closes the current episode: bandit update with its return, next arm
  // drawn, environment reset.
  EpisodeMetrics EndEpisode();

  // Mean return of noise-free episodes from a fixed set of start states
  // (derived from the seed only).
  double Evaluate(int64_t episodes) const;

  const Policy& policy() const { return policy_; }
  const Policy& policy_target() const { return policy_target_; }
  const CriticPair& critics() const { return critics_; }
  const OptimismBandit& bandit() const { return bandit_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  const Env& env() const { return *env_; }

  // Parameter blocks in checkpoint order: policy, policy_target, c1, c2,
  // t1, t2.
  std::vector<Mlp*> mutable_networks();
  std::vector<const Mlp*> networks() const;
  OptimismBandit& mutable_bandit() { return bandit_; }

  size_t arm() const { return arm_; }
  double beta() const { return beta_; }
  int64_t episode() const { return episode_; }
  double episode_return() const { return episode_return_; }
  int64_t critic_updates() const { return critic_updates_; }
  int64_t actor_updates() const { return actor_updates_; }

 private:
  void DrawArm();

  TrainConfig config_;
  std::unique_ptr<Env> env_;
  SeededRng env_rng_;
  SeededRng explore_rng_;
  SeededRng replay_rng_;
  SeededRng target_rng_;
  SeededRng bandit_rng_;
  Policy policy_;
  Policy policy_target_;
  CriticPair critics_;
  AdamState actor_opt_;
  AdamState critic1_opt_;
  AdamState critic2_opt_;
  OptimismBandit bandit_;
  ReplayBuffer buffer_;

  std::vector<double> obs_;
  size_t arm_ = 0;
  double beta_ = 0.0;
  std::vector<double> arm_probs_;
  int64_t episode_ = 0;
  double episode_return_ = 0.0;
  int64_t critic_updates_ = 0;
  int64_t actor_updates_ = 0;
};

// Optimism encoding for traces: the arm's position between the smallest
// (0) and largest (1) optimism value; a single-arm run is 1 when its beta
// is non-negative and 0 otherwise.
double OptimismLevel(std::span<const double> arms, size_t arm);

struct RunResult {
  std::vector<MetricsRow> metrics;
  std::vector<OptimismTraceRow> trace;
  bool aborted = false;
  std::string error;
  int64_t steps_completed = 0;
};

// Runs total_steps environment steps with periodic evaluation. When
// out_dir is non-empty, writes metrics.csv, optimism_trace.csv and
// checkpoints/ there (and an ABORTED marker if a numeric error stops the
// run). A positive flush_every_rows rewrites metrics.csv whenever that
// many new rows have accumulated. Config errors throw ConfigError before
// anything is written.
RunResult RunTraining(const TrainConfig& config, const std::string& out_dir,
                      int64_t flush_every_rows = 0);

}  // namespace top

#endif  // TOP_AGENT_H_
