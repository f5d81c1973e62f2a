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

#include "top/agent.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "top/checkpoint.h"
#include "top/errors.h"
#include "top/uncertainty.h"

namespace top {
namespace {

// Stream tags for SeededRng::Fork.
enum RngStream : uint64_t {
  kInitStream = 1,
  kEnvStream,
  kExploreStream,
  kReplayStream,
  kTargetNoiseStream,
  kBanditStream,
  kEvalStream,
};

EnvOptions MakeEnvOptions(const TrainConfig& c) {
  EnvOptions o;
  o.reward_noise_std = c.reward_noise_std;
  o.integrator = c.integrator;
  o.diag_constant = c.diag_constant;
  return o;
}

BanditOptions MakeBanditOptions(const TrainConfig& c) {
  BanditOptions o;
  o.arms = c.beta_options;
  o.eta = c.bandit_eta;
  return o;
}

const TrainConfig& Validated(const TrainConfig& config) {
  const std::vector<std::string> errors = ValidateTrainConfig(config);
  if (!errors.empty()) {
    std::string msg = "invalid training config:";
    for (const std::string& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return config;
}

// Running mean over the steps since the last emitted row.
struct MeanAccumulator {
  double sum = 0.0;
  int64_t count = 0;

  void Add(double x) {
    sum += x;
    ++count;
  }
  std::optional<double> TakeMean() {
    std::optional<double> out;
    if (count > 0) out = sum / static_cast<double>(count);
    sum = 0.0;
    count = 0;
    return out;
  }
};

}  // namespace

std::vector<std::string> ValidateTrainConfig(const TrainConfig& c) {
  std::vector<std::string> errors;
  if (!IsKnownEnv(c.env)) {
    errors.push_back(
        "env: unknown '" + c.env +
        "', expected pendulum|pointmass|diag-const|diag-uniform|diag-bernoulli");
  }
  // gamma = 0 is allowed for the single-state diagnostics.
  if (!(c.gamma >= 0.0 && c.gamma < 1.0)) {
    errors.push_back("gamma: must be in [0, 1), got " + FormatReal(c.gamma));
  }
  if (!(c.polyak_tau > 0.0 && c.polyak_tau <= 1.0)) {
    errors.push_back("polyak_tau: must be in (0, 1], got " +
                     FormatReal(c.polyak_tau));
  }
  if (c.policy_delay < 1) errors.push_back("policy_delay: must be >= 1");
  if (c.batch_size < 1) errors.push_back("batch_size: must be >= 1");
  if (c.total_steps < 0) errors.push_back("total_steps: must be >= 0");
  if (c.random_action_steps < 0) {
    errors.push_back("random_action_steps: must be >= 0");
  }
  if (c.collection_steps < 0) errors.push_back("collection_steps: must be >= 0");
  if (c.replay_capacity < 1) errors.push_back("replay_capacity: must be >= 1");
  if (c.hidden.empty()) {
    errors.push_back("hidden: need at least one hidden layer");
  }
  for (size_t h : c.hidden) {
    if (h == 0) errors.push_back("hidden: layer sizes must be positive");
  }
  if (c.num_quantiles < 1) errors.push_back("quantiles: must be >= 1");
  if (!(c.kappa > 0.0)) errors.push_back("kappa: must be > 0");
  if (!(c.actor_lr >= 0.0)) errors.push_back("actor_lr: must be >= 0");
  if (!(c.critic_lr >= 0.0)) errors.push_back("critic_lr: must be >= 0");
  if (!(c.noise.rollout_sigma >= 0.0)) {
    errors.push_back("noise.rollout_sigma: must be >= 0");
  }
  if (!(c.noise.target_sigma >= 0.0)) {
    errors.push_back("noise.target_sigma: must be >= 0");
  }
  if (!(c.noise.clip_c >= 0.0)) errors.push_back("noise.target_clip: must be >= 0");
  if (c.beta_options.empty()) {
    errors.push_back("beta_options: need at least one value");
  }
  for (double b : c.beta_options) {
    if (!std::isfinite(b)) errors.push_back("beta_options: values must be finite");
  }
  if (!(c.bandit_eta > 0.0)) errors.push_back("bandit.eta: must be > 0");
  if (!(c.reward_noise_std >= 0.0)) {
    errors.push_back("env.reward_noise_std: must be >= 0");
  }
  if (c.eval_interval < 1) errors.push_back("eval_interval: must be >= 1");
  if (c.eval_episodes < 1) errors.push_back("eval_episodes: must be >= 1");
  return errors;
}

void Polyak(std::span<double> target, std::span<const double> live,
            double tau) {
  TOP_CHECK(target.size() == live.size(), "Polyak: shape mismatch");
  for (size_t i = 0; i < target.size(); ++i) {
    target[i] = tau * live[i] + (1.0 - tau) * target[i];
  }
}

double OptimismLevel(std::span<const double> arms, size_t arm) {
  TOP_CHECK(arm < arms.size(), "OptimismLevel: arm out of range");
  const auto [lo, hi] = std::minmax_element(arms.begin(), arms.end());
  if (*hi == *lo) return arms[arm] >= 0.0 ? 1.0 : 0.0;
  return (arms[arm] - *lo) / (*hi - *lo);
}

TopAgent::TopAgent(const TrainConfig& config)
    : config_(Validated(config)),
      env_(MakeEnv(config_.env, MakeEnvOptions(config_))),
      env_rng_(SeededRng(config_.seed).Fork(kEnvStream)),
      explore_rng_(SeededRng(config_.seed).Fork(kExploreStream)),
      replay_rng_(SeededRng(config_.seed).Fork(kReplayStream)),
      target_rng_(SeededRng(config_.seed).Fork(kTargetNoiseStream)),
      bandit_rng_(SeededRng(config_.seed).Fork(kBanditStream)),
      policy_(env_->spec().state_dim, env_->spec().action_dim, config_.hidden),
      policy_target_(policy_),
      critics_([&] {
        SeededRng init = SeededRng(config_.seed).Fork(kInitStream);
        policy_.net().InitFanIn(init);
        policy_target_ = policy_;
        return CriticPair::Create(env_->spec().state_dim,
                                  env_->spec().action_dim, config_.hidden,
                                  static_cast<size_t>(config_.num_quantiles),
                                  init);
      }()),
      actor_opt_(policy_.net().num_params(), AdamOptions{config_.actor_lr}),
      critic1_opt_(critics_.c1.net().num_params(),
                   AdamOptions{config_.critic_lr}),
      critic2_opt_(critics_.c2.net().num_params(),
                   AdamOptions{config_.critic_lr}),
      bandit_(MakeBanditOptions(config_)),
      buffer_(static_cast<size_t>(config_.replay_capacity),
              env_->spec().state_dim, env_->spec().action_dim) {
  obs_ = env_->Reset(env_rng_);
  DrawArm();
}

void TopAgent::DrawArm() {
  const ArmDraw draw = bandit_.SampleArm(bandit_rng_);
  arm_ = draw.arm;
  beta_ = draw.beta;
  arm_probs_.assign(bandit_.last_probs().begin(), bandit_.last_probs().end());
}

std::vector<Mlp*> TopAgent::mutable_networks() {
  return {&policy_.net(),      &policy_target_.net(), &critics_.c1.net(),
          &critics_.c2.net(),  &critics_.t1.net(),    &critics_.t2.net()};
}

std::vector<const Mlp*> TopAgent::networks() const {
  return {&policy_.net(),      &policy_target_.net(), &critics_.c1.net(),
          &critics_.c2.net(),  &critics_.t1.net(),    &critics_.t2.net()};
}

StepMetrics TopAgent::TrainStep(int64_t t) {
  StepMetrics m;
  m.step = t;
  m.episode = episode_;
  m.arm = arm_;
  m.beta = beta_;

  const size_t action_dim = env_->spec().action_dim;
  std::vector<double> action;
  if (t < config_.random_action_steps) {
    action.resize(action_dim);
    for (double& a : action) a = explore_rng_.Uniform(-1.0, 1.0);
  } else {
    action = ExploreAction(policy_, obs_, config_.noise, explore_rng_);
  }
  StepResult result = env_->Step(action);
  buffer_.Push(Transition{obs_, action, result.reward, result.observation,
                          result.terminated});
  episode_return_ += result.reward;
  m.reward = result.reward;
  m.episode_done = result.done();
  obs_ = std::move(result.observation);

  if (t >= config_.collection_steps) {
    const TransitionBatch batch =
        buffer_.Sample(static_cast<size_t>(config_.batch_size), replay_rng_);
    const size_t n = batch.size();
    const size_t k = critics_.c1.k();

    const Mat next_actions = SmoothedTargetActions(
        policy_target_, batch.next_states, config_.noise, target_rng_);
    const Mat tq1 = critics_.t1.PredictBatch(batch.next_states, next_actions);
    const Mat tq2 = critics_.t2.PredictBatch(batch.next_states, next_actions);
    Mat targets(n, k);
    double sigma_sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
      auto row = targets.row(i);
      BeliefFromCritics(tq1.row(i), tq2.row(i), beta_, row);
      const double discount = config_.gamma * (1.0 - batch.dones[i]);
      for (size_t j = 0; j < k; ++j) {
        sigma_sum += std::abs(tq1(i, j) - tq2(i, j));
        row[j] = batch.rewards[i] + discount * row[j];
      }
    }
    m.mean_sigma = sigma_sum / std::numbers::sqrt2 / static_cast<double>(n * k);

    const CriticLosses losses =
        CriticUpdate(critics_, batch.states, batch.actions, targets,
                     config_.kappa, critic1_opt_, critic2_opt_);
    ++critic_updates_;
    m.critic_updated = true;
    m.critic_loss_1 = losses.critic1;
    m.critic_loss_2 = losses.critic2;

    if (t >= config_.random_action_steps && t % config_.policy_delay == 0) {
      m.actor_objective =
          ActorUpdate(policy_, critics_, beta_, batch.states, actor_opt_);
      ++actor_updates_;
      m.actor_updated = true;
      Polyak(critics_.t1.net().mutable_params(), critics_.c1.net().params(),
             config_.polyak_tau);
      Polyak(critics_.t2.net().mutable_params(), critics_.c2.net().params(),
             config_.polyak_tau);
      Polyak(policy_target_.net().mutable_params(), policy_.net().params(),
             config_.polyak_tau);
    }
  }
  return m;
}

EpisodeMetrics TopAgent::EndEpisode() {
  EpisodeMetrics em;
  em.episode = episode_;
  em.episode_return = episode_return_;
  em.arm = arm_;
  em.beta = beta_;
  em.probs = arm_probs_;
  em.feedback = bandit_.Update(BanditFeedback{episode_return_, arm_});
  ++episode_;
  episode_return_ = 0.0;
  DrawArm();
  obs_ = env_->Reset(env_rng_);
  return em;
}

double TopAgent::Evaluate(int64_t episodes) const {
  std::unique_ptr<Env> env = env_->Clone();
  SeededRng rng = SeededRng(config_.seed).Fork(kEvalStream);
  double total = 0.0;
  for (int64_t e = 0; e < episodes; ++e) {
    std::vector<double> obs = env->Reset(rng);
    while (true) {
      StepResult r = env->Step(policy_.Act(obs));
      total += r.reward;
      if (r.done()) break;
      obs = std::move(r.observation);
    }
  }
  return total / static_cast<double>(episodes);
}

RunResult RunTraining(const TrainConfig& config, const std::string& out_dir,
                      int64_t flush_every_rows) {
  TopAgent agent(config);
  RunResult result;
  const bool write = !out_dir.empty();
  const std::string ckpt_dir = (std::filesystem::path(out_dir) / "checkpoints").string();
  if (write) std::filesystem::create_directories(ckpt_dir);
  auto checkpoint = [&](int64_t step) {
    if (write) {
      WriteCheckpoint(CheckpointPath(ckpt_dir, step),
                      CaptureCheckpoint(agent, step));
    }
  };
  checkpoint(0);

  const std::span<const double> arms = agent.bandit().arms();
  MeanAccumulator loss1;
  MeanAccumulator loss2;
  MeanAccumulator actor_obj;
  MeanAccumulator sigma;
  auto base_row = [&](int64_t step) {
    MetricsRow row;
    row.step = step;
    row.episode = agent.episode();
    row.env_name = config.env;
    row.seed = config.seed;
    return row;
  };
  auto fill_running = [&](MetricsRow& row) {
    row.critic_loss_1 = loss1.TakeMean();
    row.critic_loss_2 = loss2.TakeMean();
    row.actor_objective = actor_obj.TakeMean();
    row.mean_sigma = sigma.TakeMean();
  };

  try {
    for (int64_t t = 0; t < config.total_steps; ++t) {
      const StepMetrics m = agent.TrainStep(t);
      if (m.critic_updated) {
        loss1.Add(m.critic_loss_1);
        loss2.Add(m.critic_loss_2);
        sigma.Add(m.mean_sigma);
      }
      if (m.actor_updated) actor_obj.Add(m.actor_objective);
      const int64_t done_steps = t + 1;
      const bool eval_due = done_steps % config.eval_interval == 0;

      std::optional<MetricsRow> row;
      if (m.episode_done) {
        const EpisodeMetrics em = agent.EndEpisode();
        MetricsRow r = base_row(done_steps);
        r.episode = em.episode;
        r.beta = em.beta;
        r.arm_probs = em.probs;
        r.episode_return = em.episode_return;
        r.bandit_feedback_normalized = em.feedback;
        row = std::move(r);
        result.trace.push_back(OptimismTraceRow{em.episode, done_steps, em.arm,
                                                em.beta,
                                                OptimismLevel(arms, em.arm),
                                                em.probs});
      }
      if (eval_due) {
        if (!row.has_value()) {
          MetricsRow r = base_row(done_steps);
          r.beta = agent.beta();
          r.arm_probs.assign(agent.bandit().last_probs().begin(),
                             agent.bandit().last_probs().end());
          row = std::move(r);
        }
        row->eval_return = agent.Evaluate(config.eval_episodes);
        checkpoint(done_steps);
      }
      if (row.has_value()) {
        fill_running(*row);
        result.metrics.push_back(std::move(*row));
        if (write && flush_every_rows > 0 &&
            result.metrics.size() % static_cast<size_t>(flush_every_rows) ==
                0) {
          WriteMetricsCsv(
              (std::filesystem::path(out_dir) / "metrics.csv").string(),
              result.metrics, arms.size());
        }
      }
      result.steps_completed = done_steps;
    }
  } catch (const NumericError& e) {
    result.aborted = true;
    result.error = e.what();
  }

  if (write) {
    WriteMetricsCsv((std::filesystem::path(out_dir) / "metrics.csv").string(),
                    result.metrics, arms.size());
    WriteOptimismTraceCsv(
        (std::filesystem::path(out_dir) / "optimism_trace.csv").string(),
        result.trace, arms.size());
    if (result.aborted) {
      std::ofstream marker(std::filesystem::path(out_dir) / "ABORTED");
      marker << "step=" << result.steps_completed << '\n'
             << "error=" << result.error << '\n';
    } else if (result.steps_completed > 0 &&
               result.steps_completed % config.eval_interval != 0) {
      checkpoint(result.steps_completed);
    }
  }
  return result;
}

}  // namespace top
