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

// Small deterministic continuous-control environments and a single-state
// diagnostic environment with a known reward distribution.

#ifndef TOP_ENVS_H_
#define TOP_ENVS_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "top/distcritic.h"
#include "top/ndmath.h"

namespace top {

struct EnvSpec {
  size_t state_dim = 1;
  size_t action_dim = 1;
  size_t max_episode_steps = 1;
  double reward_noise_std = 0.0;
};

struct StepResult {
  std::vector<double> observation;
  double reward = 0.0;
  bool terminated = false;  // genuine terminal state
  bool truncated = false;   // time limit reached

  bool done() const { return terminated || truncated; }
};

class Env {
 public:
  virtual ~Env() = default;

  virtual std::string name() const = 0;
  const EnvSpec& spec() const { return spec_; }
  size_t steps() const { return steps_; }

  // Draws an initial state. The env also re-seeds its private reward
  // noise stream from rng, so a fixed rng gives a fixed episode.
  std::vector<double> Reset(SeededRng& rng);
  // Actions are clamped to [-1, 1]; non-finite actions throw ContractError.
  StepResult Step(std::span<const double> action);

  virtual std::unique_ptr<Env> Clone() const = 0;

 protected:
  explicit Env(EnvSpec spec) : spec_(spec) {}

  virtual std::vector<double> DoReset(SeededRng& rng) = 0;
  // Advances the dynamics with a clamped action; returns the noiseless
  // reward and sets *terminated for genuine terminal states.
  virtual double DoStep(std::span<const double> action, bool* terminated) = 0;
  virtual std::vector<double> Observe() const = 0;

  SeededRng& noise_rng() { return noise_rng_; }

 private:
  EnvSpec spec_;
  size_t steps_ = 0;
  SeededRng noise_rng_{0};
};

enum class Integrator { kExplicitEuler, kSemiImplicitEuler };

// Torque-limited pendulum; theta = 0 is upright. Observation is
// (cos theta, sin theta, theta_dot).
//   theta_ddot = (g / l) sin(theta) + max_torque * a / (m l^2)
class Pendulum : public Env {
 public:
  static constexpr double kGravity = 10.0;
  static constexpr double kLength = 1.0;
  static constexpr double kMass = 1.0;
  static constexpr double kMaxTorque = 2.0;
  static constexpr double kMaxSpeed = 8.0;
  static constexpr double kDt = 0.05;

  explicit Pendulum(double reward_noise_std = 0.0,
                    Integrator integrator = Integrator::kExplicitEuler,
                    size_t max_episode_steps = 200, double dt = kDt);

  std::string name() const override { return "pendulum"; }
  std::unique_ptr<Env> Clone() const override;

  double dt() const { return dt_; }
  double theta() const { return theta_; }
  double theta_dot() const { return theta_dot_; }
  void set_state(double theta, double theta_dot);
  // Mechanical energy with the potential zero at the upright position.
  double Energy() const;

 protected:
  std::vector<double> DoReset(SeededRng& rng) override;
  double DoStep(std::span<const double> action, bool* terminated) override;
  std::vector<double> Observe() const override;

 private:
  Integrator integrator_;
  double dt_;
  double theta_ = 0.0;
  double theta_dot_ = 0.0;
};

// Planar double integrator driven toward the origin. Observation is
// (x, y, vx, vy).
class PointMass : public Env {
 public:
  static constexpr double kAccelGain = 4.0;
  static constexpr double kMaxSpeed = 2.0;
  static constexpr double kDt = 0.05;

  explicit PointMass(double reward_noise_std = 0.0,
                     size_t max_episode_steps = 150);

  std::string name() const override { return "pointmass"; }
  std::unique_ptr<Env> Clone() const override;

  std::span<const double> position() const { return pos_; }
  std::span<const double> velocity() const { return vel_; }
  void set_state(std::span<const double> pos, std::span<const double> vel);

 protected:
  std::vector<double> DoReset(SeededRng& rng) override;
  double DoStep(std::span<const double> action, bool* terminated) override;
  std::vector<double> Observe() const override;

 private:
  std::vector<double> pos_ = {0.0, 0.0};
  std::vector<double> vel_ = {0.0, 0.0};
};

enum class RewardLaw { kConstant, kUniform, kBernoulli };

// One absorbing state, one-step episodes, reward drawn from a fixed law:
// constant c, U(0, 1), or {0, 1} with probability 1/2 each. The
// observation is always (1.0).
class DiagnosticSingleState : public Env {
 public:
  explicit DiagnosticSingleState(RewardLaw law, double constant = 1.0,
                                 double reward_noise_std = 0.0);

  std::string name() const override;
  std::unique_ptr<Env> Clone() const override;

  RewardLaw law() const { return law_; }
  double constant() const { return constant_; }

  // Exact quantiles of the reward law at the given fractions (reward
  // noise is not included).
  std::vector<double> AnalyticQuantiles(const QuantileFractions& f) const;

 protected:
  std::vector<double> DoReset(SeededRng& rng) override;
  double DoStep(std::span<const double> action, bool* terminated) override;
  std::vector<double> Observe() const override { return {1.0}; }

 private:
  RewardLaw law_;
  double constant_;
};

// Throws ContractError unless env is a DiagnosticSingleState.
std::vector<double> AnalyticQuantiles(const Env& env,
                                      const QuantileFractions& fractions);

struct EnvOptions {
  double reward_noise_std = 0.0;
  Integrator integrator = Integrator::kExplicitEuler;
  double diag_constant = 1.0;
};

// "pendulum" | "pointmass" | "diag-const" | "diag-uniform" |
// "diag-bernoulli". Unknown names throw ConfigError.
std::unique_ptr<Env> MakeEnv(const std::string& name,
                             const EnvOptions& options = {});

bool IsKnownEnv(const std::string& name);

// Wraps an angle into [-pi, pi).
double WrapAngle(double x);

}  // namespace top

#endif  // TOP_ENVS_H_
