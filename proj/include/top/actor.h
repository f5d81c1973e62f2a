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

// Deterministic tanh-bounded policy, its exploration and target-smoothing
// noise, and the deterministic policy gradient step through the belief
// mean of both critics.

#ifndef TOP_ACTOR_H_
#define TOP_ACTOR_H_

#include <span>
#include <vector>

#include "top/adam.h"
#include "top/distcritic.h"
#include "top/mlp.h"
#include "top/ndmath.h"

namespace top {

struct NoiseSpec {
  double rollout_sigma = 0.1;
  double target_sigma = 0.2;
  double clip_c = 0.5;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

class Policy {
 public:
  Policy(size_t state_dim, size_t action_dim,
         const std::vector<size_t>& hidden, double action_limit = 1.0);

  size_t state_dim() const { return net_.input_size(); }
  size_t action_dim() const { return net_.output_size(); }
  double action_limit() const { return action_limit_; }

  const Mlp& net() const { return net_; }
  Mlp& net() { return net_; }

  std::vector<double> Act(std::span<const double> state) const;
  Mat ActBatch(const Mat& states, MlpTape* tape = nullptr) const;

 private:
  Mlp net_;
  double action_limit_;
};

// clamp(pi(s) + N(0, rollout_sigma^2), +-limit), independently per
// component.
std::vector<double> ExploreAction(const Policy& policy,
                                  std::span<const double> state,
                                  const NoiseSpec& noise, SeededRng& rng);

// clamp(pi'(s') + clip(N(0, target_sigma^2), -c, c), +-limit), one row per
// next state.
Mat SmoothedTargetActions(const Policy& target_policy, const Mat& next_states,
                          const NoiseSpec& noise, SeededRng& rng);

// Mean over the batch of the belief mean Q~(s, pi(s)) computed from the
// live critics with optimism beta. When grad is non-null it receives the
// gradient of that mean w.r.t. the policy parameters (ascent direction);
// the critics only contribute input gradients.
double ActorObjective(const Policy& policy, const CriticPair& critics,
                      double beta, const Mat& states,
                      std::vector<double>* grad);

// One Adam ascent step on ActorObjective. Returns the objective before
// the step. Throws NumericError (policy unchanged) on a non-finite value.
double ActorUpdate(Policy& policy, const CriticPair& critics, double beta,
                   const Mat& states, AdamState& opt);

}  // namespace top

#endif  // TOP_ACTOR_H_
