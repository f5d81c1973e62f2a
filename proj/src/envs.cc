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

#include "top/envs.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "top/errors.h"

namespace top {

using std::numbers::pi;

double WrapAngle(double x) {
  double y = std::fmod(x + pi, 2.0 * pi);
  if (y < 0.0) y += 2.0 * pi;
  return y - pi;
}

std::vector<double> Env::Reset(SeededRng& rng) {
  steps_ = 0;
  std::vector<double> obs = DoReset(rng);
  noise_rng_ = SeededRng(rng.NextU64());
  return obs;
}

StepResult Env::Step(std::span<const double> action) {
  TOP_CHECK(action.size() == spec_.action_dim,
            "Env::Step: action dimension mismatch");
  std::vector<double> clamped(action.size());
  for (size_t i = 0; i < action.size(); ++i) {
    if (!std::isfinite(action[i])) {
      throw ContractError("Env::Step: non-finite action");
    }
    clamped[i] = std::clamp(action[i], -1.0, 1.0);
  }
  StepResult result;
  result.reward = DoStep(clamped, &result.terminated);
  if (spec_.reward_noise_std > 0.0) {
    result.reward += spec_.reward_noise_std * noise_rng_.Normal();
  }
  ++steps_;
  result.truncated = !result.terminated && steps_ >= spec_.max_episode_steps;
  result.observation = Observe();
  return result;
}

// -- Pendulum -----------------------------------------------------------------

Pendulum::Pendulum(double reward_noise_std, Integrator integrator,
                   size_t max_episode_steps, double dt)
    : Env(EnvSpec{3, 1, max_episode_steps, reward_noise_std}),
      integrator_(integrator),
      dt_(dt) {
  TOP_CHECK(dt > 0.0, "Pendulum: dt must be positive");
}

std::unique_ptr<Env> Pendulum::Clone() const {
  return std::make_unique<Pendulum>(*this);
}

void Pendulum::set_state(double theta, double theta_dot) {
  theta_ = WrapAngle(theta);
  theta_dot_ = theta_dot;
}

double Pendulum::Energy() const {
  return 0.5 * kMass * kLength * kLength * theta_dot_ * theta_dot_ +
         kMass * kGravity * kLength * (std::cos(theta_) - 1.0);
}

std::vector<double> Pendulum::DoReset(SeededRng& rng) {
  theta_ = rng.Uniform(-pi, pi);
  theta_dot_ = rng.Uniform(-1.0, 1.0);
  return Observe();
}

double Pendulum::DoStep(std::span<const double> action, bool* terminated) {
  const double torque = kMaxTorque * action[0];
  const double th = WrapAngle(theta_);
  const double reward =
      -(th * th + 0.1 * theta_dot_ * theta_dot_ + 0.001 * torque * torque);
  const double accel = kGravity / kLength * std::sin(theta_) +
                       torque / (kMass * kLength * kLength);
  if (integrator_ == Integrator::kExplicitEuler) {
    const double next_theta = theta_ + theta_dot_ * dt_;
    theta_dot_ = std::clamp(theta_dot_ + accel * dt_, -kMaxSpeed, kMaxSpeed);
    theta_ = WrapAngle(next_theta);
  } else {
    theta_dot_ = std::clamp(theta_dot_ + accel * dt_, -kMaxSpeed, kMaxSpeed);
    theta_ = WrapAngle(theta_ + theta_dot_ * dt_);
  }
  *terminated = false;
  return reward;
}

std::vector<double> Pendulum::Observe() const {
  return {std::cos(theta_), std::sin(theta_), theta_dot_};
}

// -- PointMass ----------------------------------------------------------------

PointMass::PointMass(double reward_noise_std, size_t max_episode_steps)
    : Env(EnvSpec{4, 2, max_episode_steps, reward_noise_std}) {}

std::unique_ptr<Env> PointMass::Clone() const {
  return std::make_unique<PointMass>(*this);
}

void PointMass::set_state(std::span<const double> pos,
                          std::span<const double> vel) {
  TOP_CHECK(pos.size() == 2 && vel.size() == 2,
            "PointMass::set_state: expected 2-D position and velocity");
  pos_.assign(pos.begin(), pos.end());
  vel_.assign(vel.begin(), vel.end());
}

std::vector<double> PointMass::DoReset(SeededRng& rng) {
  pos_ = {rng.Uniform(-1.0, 1.0), rng.Uniform(-1.0, 1.0)};
  vel_ = {0.0, 0.0};
  return Observe();
}

double PointMass::DoStep(std::span<const double> action, bool* terminated) {
  const double dist = std::hypot(pos_[0], pos_[1]);
  const double effort = action[0] * action[0] + action[1] * action[1];
  const double reward = -dist - 0.01 * effort;
  for (int i = 0; i < 2; ++i) {
    pos_[i] += vel_[i] * kDt;
    vel_[i] = std::clamp(vel_[i] + kAccelGain * action[i] * kDt, -kMaxSpeed,
                         kMaxSpeed);
  }
  *terminated = false;
  return reward;
}

std::vector<double> PointMass::Observe() const {
  return {pos_[0], pos_[1], vel_[0], vel_[1]};
}

// -- DiagnosticSingleState ----------------------------------------------------

DiagnosticSingleState::DiagnosticSingleState(RewardLaw law, double constant,
                                             double reward_noise_std)
    : Env(EnvSpec{1, 1, 1, reward_noise_std}), law_(law), constant_(constant) {}

std::string DiagnosticSingleState::name() const {
  switch (law_) {
    case RewardLaw::kConstant:
      return "diag-const";
    case RewardLaw::kUniform:
      return "diag-uniform";
    case RewardLaw::kBernoulli:
      return "diag-bernoulli";
  }
  return "diag";
}

std::unique_ptr<Env> DiagnosticSingleState::Clone() const {
  return std::make_unique<DiagnosticSingleState>(*this);
}

std::vector<double> DiagnosticSingleState::AnalyticQuantiles(
    const QuantileFractions& f) const {
  std::vector<double> q;
  q.reserve(f.k());
  for (double tau : f.taus()) {
    switch (law_) {
      case RewardLaw::kConstant:
        q.push_back(constant_);
        break;
      case RewardLaw::kUniform:
        q.push_back(tau);
        break;
      case RewardLaw::kBernoulli:
        q.push_back(tau < 0.5 ? 0.0 : 1.0);
        break;
    }
  }
  return q;
}

std::vector<double> DiagnosticSingleState::DoReset(SeededRng&) {
  return Observe();
}

double DiagnosticSingleState::DoStep(std::span<const double>,
                                     bool* terminated) {
  *terminated = true;
  switch (law_) {
    case RewardLaw::kConstant:
      return constant_;
    case RewardLaw::kUniform:
      return noise_rng().Uniform();
    case RewardLaw::kBernoulli:
      return noise_rng().Uniform() < 0.5 ? 0.0 : 1.0;
  }
  return 0.0;
}

std::vector<double> AnalyticQuantiles(const Env& env,
                                      const QuantileFractions& fractions) {
  const auto* diag = dynamic_cast<const DiagnosticSingleState*>(&env);
  if (diag == nullptr) {
    throw ContractError("AnalyticQuantiles: '" + env.name() +
                        "' has no analytic return distribution");
  }
  return diag->AnalyticQuantiles(fractions);
}

bool IsKnownEnv(const std::string& name) {
  return name == "pendulum" || name == "pointmass" || name == "diag-const" ||
         name == "diag-uniform" || name == "diag-bernoulli";
}

std::unique_ptr<Env> MakeEnv(const std::string& name,
                             const EnvOptions& options) {
  if (name == "pendulum") {
    return std::make_unique<Pendulum>(options.reward_noise_std,
                                      options.integrator);
  }
  if (name == "pointmass") {
    return std::make_unique<PointMass>(options.reward_noise_std);
  }
  if (name == "diag-const") {
    return std::make_unique<DiagnosticSingleState>(
        RewardLaw::kConstant, options.diag_constant, options.reward_noise_std);
  }
  if (name == "diag-uniform") {
    return std::make_unique<DiagnosticSingleState>(
        RewardLaw::kUniform, options.diag_constant, options.reward_noise_std);
  }
  if (name == "diag-bernoulli") {
    return std::make_unique<DiagnosticSingleState>(
        RewardLaw::kBernoulli, options.diag_constant,
        options.reward_noise_std);
  }
  throw ConfigError("unknown env '" + name +
                    "' (expected pendulum|pointmass|diag-const|diag-uniform|"
                    "diag-bernoulli)");
}

}  // namespace top
