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

#include "top/actor.h"

#include <algorithm>
#include <cmath>

#include "top/errors.h"
#include "top/uncertainty.h"

namespace top {
namespace {

std::vector<size_t> PolicyLayers(size_t in, const std::vector<size_t>& hidden,
                                 size_t out) {
  std::vector<size_t> sizes{in};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(out);
  return sizes;
}

}  // namespace

Policy::Policy(size_t state_dim, size_t action_dim,
               const std::vector<size_t>& hidden, double action_limit)
    : net_(PolicyLayers(state_dim, hidden, action_dim),
           OutputActivation::kTanh),
      action_limit_(action_limit) {
  TOP_CHECK(action_limit > 0.0, "Policy: action_limit must be positive");
}

std::vector<double> Policy::Act(std::span<const double> state) const {
  TOP_CHECK(state.size() == state_dim(), "Policy::Act: state dim mismatch");
  std::vector<double> action = net_.Forward(state);
  for (double& a : action) a *= action_limit_;
  return action;
}

Mat Policy::ActBatch(const Mat& states, MlpTape* tape) const {
  Mat actions = net_.Forward(states, tape);
  for (double& a : actions.data()) a *= action_limit_;
  return actions;
}

std::vector<double> ExploreAction(const Policy& policy,
                                  std::span<const double> state,
                                  const NoiseSpec& noise, SeededRng& rng) {
  std::vector<double> action = policy.Act(state);
  const double limit = policy.action_limit();
  for (double& a : action) {
    a = std::clamp(a + noise.rollout_sigma * rng.Normal(), -limit, limit);
  }
  return action;
}

Mat SmoothedTargetActions(const Policy& target_policy, const Mat& next_states,
                          const NoiseSpec& noise, SeededRng& rng) {
  Mat actions = target_policy.ActBatch(next_states);
  const double limit = target_policy.action_limit();
  for (double& a : actions.data()) {
    const double eps = std::clamp(noise.target_sigma * rng.Normal(),
                                  -noise.clip_c, noise.clip_c);
    a = std::clamp(a + eps, -limit, limit);
  }
  return actions;
}

double ActorObjective(const Policy& policy, const CriticPair& critics,
                      double beta, const Mat& states,
                      std::vector<double>* grad) {
  const size_t batch = states.rows();
  TOP_CHECK(batch > 0, "ActorObjective: empty batch");
  const size_t state_dim = policy.state_dim();
  const size_t action_dim = policy.action_dim();
  const size_t num_q = critics.c1.k();

  MlpTape policy_tape;
  MlpTape tape1;
  MlpTape tape2;
  const Mat actions = policy.ActBatch(states, &policy_tape);
  const Mat q1 = critics.c1.PredictBatch(states, actions, &tape1);
  const Mat q2 = critics.c2.PredictBatch(states, actions, &tape2);

  const double inv_n = 1.0 / static_cast<double>(batch);
  std::vector<double> belief(num_q);
  Mat dq1(batch, num_q);
  Mat dq2(batch, num_q);
  double objective = 0.0;
  for (size_t n = 0; n < batch; ++n) {
    BeliefFromCritics(q1.row(n), q2.row(n), beta, belief);
    double mean = 0.0;
    for (double q : belief) mean += q;
    objective += mean / static_cast<double>(num_q);
    BeliefMeanGradient(q1.row(n), q2.row(n), beta, dq1.row(n), dq2.row(n));
  }
  objective *= inv_n;
  if (!std::isfinite(objective)) {
    throw NumericError("ActorObjective: non-finite belief value");
  }
  if (grad == nullptr) return objective;

  for (double& g : dq1.data()) g *= inv_n;
  for (double& g : dq2.data()) g *= inv_n;
  const Mat in1 = critics.c1.net().Backward(tape1, dq1, false).input;
  const Mat in2 = critics.c2.net().Backward(tape2, dq2, false).input;
  // Chain through a = limit * tanh(.) : the tape sees the tanh output.
  Mat da(batch, action_dim);
  for (size_t n = 0; n < batch; ++n) {
    for (size_t j = 0; j < action_dim; ++j) {
      da(n, j) = policy.action_limit() *
                 (in1(n, state_dim + j) + in2(n, state_dim + j));
    }
  }
  *grad = policy.net().Backward(policy_tape, da).params;
  return objective;
}

double ActorUpdate(Policy& policy, const CriticPair& critics, double beta,
                   const Mat& states, AdamState& opt) {
  std::vector<double> grad;
  const double objective = ActorObjective(policy, critics, beta, states, &grad);
  for (double& g : grad) g = -g;
  AdamStep(policy.net().mutable_params(), grad, opt);
  return objective;
}

}  // namespace top
