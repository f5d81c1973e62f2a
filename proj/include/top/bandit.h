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

// Exponentially weighted average forecaster over a discrete set of
// optimism values. Arm d is drawn with probability proportional to
// exp(w(d)); after an episode the chosen arm's log-weight moves by
// eta * f / p(d), where f is the normalized episode-over-episode return
// improvement. Other arms are left alone.

#ifndef TOP_BANDIT_H_
#define TOP_BANDIT_H_

#include <optional>
#include <span>
#include <vector>

#include "top/ndmath.h"

namespace top {

struct BanditOptions {
  std::vector<double> arms = {-1.0, 0.0};
  double eta = 0.1;
  // Log-weights are kept in [-weight_clip, weight_clip].
  double weight_clip = 50.0;
  // Normalized feedback is clipped to [-feedback_clip, feedback_clip].
  double feedback_clip = 3.0;
  // Raw improvements are divided by an EMA of their magnitude.
  double scale_half_life = 20.0;
  double scale_floor = 1e-8;
};

struct BanditFeedback {
  double episode_return = 0.0;
  size_t chosen_arm = 0;
};

struct ArmDraw {
  size_t arm = 0;
  double beta = 0.0;
};

class OptimismBandit {
 public:
  explicit OptimismBandit(BanditOptions options = {});

  const BanditOptions& options() const { return options_; }
  std::span<const double> arms() const { return options_.arms; }
  size_t num_arms() const { return options_.arms.size(); }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> last_probs() const { return last_probs_; }
  std::optional<double> prev_return() const { return prev_return_; }
  std::optional<double> feedback_scale() const { return scale_; }

  // Replaces the log-weights (clipped). Used to restore state.
  void set_weights(std::span<const double> weights);

  // Softmax of the log-weights.
  std::vector<double> Probs() const;

  // Draws an arm and records the probabilities used for importance
  // weighting in the next update.
  ArmDraw SampleArm(SeededRng& rng);

  // Episode-level update from a raw return. The first call only records
  // the return. Returns the normalized feedback that was applied, if any.
  // A non-finite return throws NumericError and leaves the state as is.
  std::optional<double> Update(const BanditFeedback& feedback);

  // Exponential-weights step with an already normalized feedback value,
  // importance-weighted by the probabilities recorded at the last draw.
  void ApplyFeedback(size_t arm, double normalized_feedback);

  // Maps a raw improvement onto the normalized scale, updating the EMA.
  double NormalizeFeedback(double raw_improvement);

 private:
  BanditOptions options_;
  std::vector<double> weights_;
  std::vector<double> last_probs_;
  std::optional<double> prev_return_;
  std::optional<double> scale_;
};

}  // namespace top

#endif  // TOP_BANDIT_H_
