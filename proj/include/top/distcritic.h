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

// Quantile-distributional critics trained with the asymmetric Huber
// quantile loss over all (target, prediction) quantile pairs.

#ifndef TOP_DISTCRITIC_H_
#define TOP_DISTCRITIC_H_

#include <span>
#include <vector>

#include "top/adam.h"
#include "top/mlp.h"
#include "top/ndmath.h"

namespace top {

// Midpoint fractions tau_k = (2k - 1) / (2K), k = 1..K.
class QuantileFractions {
 public:
  explicit QuantileFractions(size_t k);

  size_t k() const { return taus_.size(); }
  std::span<const double> taus() const { return taus_; }

 private:
  std::vector<double> taus_;
};

// Maps (state, action) to K quantile estimates of the return.
class QuantileCritic {
 public:
  QuantileCritic(size_t state_dim, size_t action_dim,
                 const std::vector<size_t>& hidden, size_t num_quantiles);

  size_t state_dim() const { return state_dim_; }
  size_t action_dim() const { return action_dim_; }
  const QuantileFractions& fractions() const { return fractions_; }
  size_t k() const { return fractions_.k(); }

  const Mlp& net() const { return net_; }
  Mlp& net() { return net_; }

  std::vector<double> PredictQuantiles(std::span<const double> state,
                                       std::span<const double> action) const;
  // One row of K quantiles per (state, action) row.
  Mat PredictBatch(const Mat& states, const Mat& actions,
                   MlpTape* tape = nullptr) const;

 private:
  size_t state_dim_;
  size_t action_dim_;
  QuantileFractions fractions_;
  Mlp net_;
};

// Live critics and their Polyak-averaged targets.
struct CriticPair {
  QuantileCritic c1;
  QuantileCritic c2;
  QuantileCritic t1;
  QuantileCritic t2;

  // Live critics initialized independently; targets are exact copies.
  static CriticPair Create(size_t state_dim, size_t action_dim,
                           const std::vector<size_t>& hidden,
                           size_t num_quantiles, SeededRng& rng);
};

double Huber(double delta, double kappa);

// (1/K) sum_{j,k} |tau_k - 1{delta_jk < 0}| * Huber(delta_jk), with
// delta_jk = target_j - pred_k. Targets are constants.
double QuantileHuberLoss(std::span<const double> pred,
                         std::span<const double> target,
                         const QuantileFractions& fractions, double kappa);

// As QuantileHuberLoss, also accumulating scale * dLoss/dpred into
// grad_pred.
double QuantileHuberLossGrad(std::span<const double> pred,
                             std::span<const double> target,
                             const QuantileFractions& fractions, double kappa,
                             double scale, std::span<double> grad_pred);

// Batch-mean quantile loss of a critic against fixed target rows. When
// param_grad is non-null it receives the gradient w.r.t. the critic's
// flat parameters.
double CriticLoss(const QuantileCritic& critic, const Mat& states,
                  const Mat& actions, const Mat& targets, double kappa,
                  std::vector<double>* param_grad);

struct CriticLosses {
  double critic1 = 0.0;
  double critic2 = 0.0;
};

// One Adam step for each live critic on the batch-mean loss against
// belief_targets (N x K, already combined with reward and discount).
// Target critics are not touched. Throws NumericError on a non-finite
// loss before any parameter changes.
CriticLosses CriticUpdate(CriticPair& pair, const Mat& states,
                          const Mat& actions, const Mat& belief_targets,
                          double kappa, AdamState& opt1, AdamState& opt2);

}  // namespace top

#endif  // TOP_DISTCRITIC_H_
