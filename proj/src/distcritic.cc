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

#include "top/distcritic.h"

#include <algorithm>
#include <cmath>

#include "top/errors.h"

namespace top {
namespace {

std::vector<size_t> CriticLayers(size_t in, const std::vector<size_t>& hidden,
                                 size_t out) {
  std::vector<size_t> sizes{in};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(out);
  return sizes;
}

}  // namespace

QuantileFractions::QuantileFractions(size_t k) {
  TOP_CHECK(k >= 1, "QuantileFractions: K must be at least 1");
  taus_.resize(k);
  for (size_t i = 0; i < k; ++i) {
    taus_[i] = static_cast<double>(2 * i + 1) / static_cast<double>(2 * k);
  }
}

QuantileCritic::QuantileCritic(size_t state_dim, size_t action_dim,
                               const std::vector<size_t>& hidden,
                               size_t num_quantiles)
    : state_dim_(state_dim),
      action_dim_(action_dim),
      fractions_(num_quantiles),
      net_(CriticLayers(state_dim + action_dim, hidden, num_quantiles),
           OutputActivation::kIdentity) {}

std::vector<double> QuantileCritic::PredictQuantiles(
    std::span<const double> state, std::span<const double> action) const {
  TOP_CHECK(state.size() == state_dim_ && action.size() == action_dim_,
            "PredictQuantiles: state/action dimension mismatch");
  std::vector<double> input(state.begin(), state.end());
  input.insert(input.end(), action.begin(), action.end());
  return net_.Forward(input);
}

Mat QuantileCritic::PredictBatch(const Mat& states, const Mat& actions,
                                 MlpTape* tape) const {
  TOP_CHECK(states.cols() == state_dim_ && actions.cols() == action_dim_,
            "PredictBatch: state/action dimension mismatch");
  return net_.Forward(ConcatCols(states, actions), tape);
}

CriticPair CriticPair::Create(size_t state_dim, size_t action_dim,
                              const std::vector<size_t>& hidden,
                              size_t num_quantiles, SeededRng& rng) {
  QuantileCritic c1(state_dim, action_dim, hidden, num_quantiles);
  QuantileCritic c2(state_dim, action_dim, hidden, num_quantiles);
  c1.net().InitFanIn(rng);
  c2.net().InitFanIn(rng);
  QuantileCritic t1 = c1;
  QuantileCritic t2 = c2;
  return CriticPair{std::move(c1), std::move(c2), std::move(t1), std::move(t2)};
}

double Huber(double delta, double kappa) {
  TOP_CHECK(kappa > 0.0, "Huber: kappa must be positive");
  const double a = std::abs(delta);
  return a <= kappa ? 0.5 * delta * delta : kappa * (a - 0.5 * kappa);
}

double QuantileHuberLoss(std::span<const double> pred,
                         std::span<const double> target,
                         const QuantileFractions& fractions, double kappa) {
  TOP_CHECK(pred.size() == fractions.k() && target.size() == fractions.k(),
            "QuantileHuberLoss: expected K predictions and K targets");
  const auto taus = fractions.taus();
  double total = 0.0;
  for (size_t j = 0; j < target.size(); ++j) {
    for (size_t k = 0; k < pred.size(); ++k) {
      const double delta = target[j] - pred[k];
      const double weight = std::abs(taus[k] - (delta < 0.0 ? 1.0 : 0.0));
      total += weight * Huber(delta, kappa);
    }
  }
  return total / static_cast<double>(fractions.k());
}

double QuantileHuberLossGrad(std::span<const double> pred,
                             std::span<const double> target,
                             const QuantileFractions& fractions, double kappa,
                             double scale, std::span<double> grad_pred) {
  const size_t num = fractions.k();
  TOP_CHECK(pred.size() == num && target.size() == num &&
                grad_pred.size() == num,
            "QuantileHuberLossGrad: expected K-length spans");
  const auto taus = fractions.taus();
  const double inv_k = 1.0 / static_cast<double>(num);
  double total = 0.0;
  for (size_t k = 0; k < num; ++k) {
    const double p = pred[k];
    const double tau = taus[k];
    // Branch-free over j so the inner loop vectorizes: c is the clipped
    // error (the Huber derivative), split by the sign of delta.
    double sum_pos = 0.0;
    double sum_neg = 0.0;
    double loss_pos = 0.0;
    double loss_neg = 0.0;
    for (size_t j = 0; j < num; ++j) {
      const double delta = target[j] - p;
      const double c = std::clamp(delta, -kappa, kappa);
      const double h = std::abs(c) * (std::abs(delta) - 0.5 * std::abs(c));
      const bool neg = delta < 0.0;
      sum_neg += neg ? c : 0.0;
      sum_pos += neg ? 0.0 : c;
      loss_neg += neg ? h : 0.0;
      loss_pos += neg ? 0.0 : h;
    }
    total += tau * loss_pos + (1.0 - tau) * loss_neg;
    // d delta / d pred = -1.
    grad_pred[k] -= scale * inv_k * (tau * sum_pos + (1.0 - tau) * sum_neg);
  }
  return total * inv_k;
}

double CriticLoss(const QuantileCritic& critic, const Mat& states,
                  const Mat& actions, const Mat& targets, double kappa,
                  std::vector<double>* param_grad) {
  const size_t batch = states.rows();
  TOP_CHECK(batch > 0 && actions.rows() == batch && targets.rows() == batch &&
                targets.cols() == critic.k(),
            "CriticLoss: batch shape mismatch");
  MlpTape tape;
  const Mat pred = critic.PredictBatch(states, actions, &tape);
  Mat dpred(batch, critic.k());
  const double inv_n = 1.0 / static_cast<double>(batch);
  double loss = 0.0;
  for (size_t n = 0; n < batch; ++n) {
    loss += QuantileHuberLossGrad(pred.row(n), targets.row(n),
                                  critic.fractions(), kappa, inv_n,
                                  dpred.row(n));
  }
  loss *= inv_n;
  if (!std::isfinite(loss)) {
    throw NumericError("CriticLoss: non-finite quantile loss");
  }
  if (param_grad != nullptr) {
    *param_grad = critic.net().Backward(tape, dpred).params;
  }
  return loss;
}

CriticLosses CriticUpdate(CriticPair& pair, const Mat& states,
                          const Mat& actions, const Mat& belief_targets,
                          double kappa, AdamState& opt1, AdamState& opt2) {
  std::vector<double> g1;
  std::vector<double> g2;
  CriticLosses losses;
  losses.critic1 =
      CriticLoss(pair.c1, states, actions, belief_targets, kappa, &g1);
  losses.critic2 =
      CriticLoss(pair.c2, states, actions, belief_targets, kappa, &g2);
  AdamStep(pair.c1.net().mutable_params(), g1, opt1);
  AdamStep(pair.c2.net().mutable_params(), g2, opt2);
  return losses;
}

}  // namespace top
