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

#include "top/bandit.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "top/errors.h"

namespace top {

OptimismBandit::OptimismBandit(BanditOptions options)
    : options_(std::move(options)), weights_(options_.arms.size(), 0.0) {
  TOP_CHECK(!options_.arms.empty(), "OptimismBandit: need at least one arm");
  TOP_CHECK(options_.eta > 0.0, "OptimismBandit: eta must be positive");
  TOP_CHECK(options_.weight_clip > 0.0,
            "OptimismBandit: weight_clip must be positive");
  TOP_CHECK(options_.scale_half_life > 0.0,
            "OptimismBandit: scale_half_life must be positive");
}

void OptimismBandit::set_weights(std::span<const double> weights) {
  TOP_CHECK(weights.size() == weights_.size(),
            "OptimismBandit::set_weights: arm count mismatch");
  for (size_t d = 0; d < weights.size(); ++d) {
    weights_[d] =
        std::clamp(weights[d], -options_.weight_clip, options_.weight_clip);
  }
}

std::vector<double> OptimismBandit::Probs() const {
  const double max_w = *std::max_element(weights_.begin(), weights_.end());
  std::vector<double> p(weights_.size());
  double total = 0.0;
  for (size_t d = 0; d < weights_.size(); ++d) {
    p[d] = std::exp(weights_[d] - max_w);
    total += p[d];
  }
  for (double& x : p) x /= total;
  return p;
}

ArmDraw OptimismBandit::SampleArm(SeededRng& rng) {
  last_probs_ = Probs();
  const double u = rng.Uniform();
  double cumulative = 0.0;
  size_t arm = last_probs_.size() - 1;
  for (size_t d = 0; d < last_probs_.size(); ++d) {
    cumulative += last_probs_[d];
    if (u < cumulative) {
      arm = d;
      break;
    }
  }
  return {arm, options_.arms[arm]};
}

double OptimismBandit::NormalizeFeedback(double raw_improvement) {
  const double magnitude = std::abs(raw_improvement);
  if (scale_.has_value()) {
    const double alpha = 1.0 - std::exp2(-1.0 / options_.scale_half_life);
    scale_ = (1.0 - alpha) * *scale_ + alpha * magnitude;
  } else {
    scale_ = magnitude;
  }
  const double scale = std::max(*scale_, options_.scale_floor);
  return std::clamp(raw_improvement / scale, -options_.feedback_clip,
                    options_.feedback_clip);
}

void OptimismBandit::ApplyFeedback(size_t arm, double normalized_feedback) {
  TOP_CHECK(arm < weights_.size(), "OptimismBandit: arm index out of range");
  TOP_CHECK(last_probs_.size() == weights_.size(),
            "OptimismBandit: update before any SampleArm");
  if (!std::isfinite(normalized_feedback)) {
    throw NumericError("OptimismBandit: non-finite feedback");
  }
  const double w = weights_[arm] +
                   options_.eta * normalized_feedback / last_probs_[arm];
  weights_[arm] = std::clamp(w, -options_.weight_clip, options_.weight_clip);
}

std::optional<double> OptimismBandit::Update(const BanditFeedback& feedback) {
  if (!std::isfinite(feedback.episode_return)) {
    throw NumericError("OptimismBandit: non-finite episode return " +
                       std::to_string(feedback.episode_return));
  }
  TOP_CHECK(feedback.chosen_arm < weights_.size(),
            "OptimismBandit: chosen arm out of range");
  if (!prev_return_.has_value()) {
    prev_return_ = feedback.episode_return;
    return std::nullopt;
  }
  TOP_CHECK(last_probs_.size() == weights_.size(),
            "OptimismBandit: update before any SampleArm");
  const double raw = feedback.episode_return - *prev_return_;
  const double normalized = NormalizeFeedback(raw);
  ApplyFeedback(feedback.chosen_arm, normalized);
  prev_return_ = feedback.episode_return;
  return normalized;
}

}  // namespace top
