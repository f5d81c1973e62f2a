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

#include "top/replay.h"

#include <algorithm>
#include <cmath>

#include "top/errors.h"

namespace top {

ReplayBuffer::ReplayBuffer(size_t capacity, size_t state_dim,
                           size_t action_dim)
    : capacity_(capacity), state_dim_(state_dim), action_dim_(action_dim) {
  TOP_CHECK(capacity > 0, "ReplayBuffer: capacity must be positive");
  TOP_CHECK(state_dim > 0 && action_dim > 0,
            "ReplayBuffer: dimensions must be positive");
}

void ReplayBuffer::Push(const Transition& t) {
  TOP_CHECK(t.s.size() == state_dim_ && t.s_next.size() == state_dim_ &&
                t.a.size() == action_dim_,
            "ReplayBuffer::Push: transition dimensions mismatch");
  TOP_CHECK(std::isfinite(t.r), "ReplayBuffer::Push: reward must be finite");
  // Storage grows lazily up to capacity.
  if (size_ < capacity_ && cursor_ == size_) {
    states_.insert(states_.end(), t.s.begin(), t.s.end());
    actions_.insert(actions_.end(), t.a.begin(), t.a.end());
    rewards_.push_back(t.r);
    next_states_.insert(next_states_.end(), t.s_next.begin(), t.s_next.end());
    dones_.push_back(t.done ? 1 : 0);
  } else {
    std::copy(t.s.begin(), t.s.end(), states_.begin() + cursor_ * state_dim_);
    std::copy(t.a.begin(), t.a.end(), actions_.begin() + cursor_ * action_dim_);
    rewards_[cursor_] = t.r;
    std::copy(t.s_next.begin(), t.s_next.end(),
              next_states_.begin() + cursor_ * state_dim_);
    dones_[cursor_] = t.done ? 1 : 0;
  }
  cursor_ = (cursor_ + 1) % capacity_;
  size_ = std::min(size_ + 1, capacity_);
}

Transition ReplayBuffer::Get(size_t i) const {
  TOP_CHECK(i < size_, "ReplayBuffer::Get: index out of range");
  Transition t;
  t.s.assign(states_.begin() + i * state_dim_,
             states_.begin() + (i + 1) * state_dim_);
  t.a.assign(actions_.begin() + i * action_dim_,
             actions_.begin() + (i + 1) * action_dim_);
  t.r = rewards_[i];
  t.s_next.assign(next_states_.begin() + i * state_dim_,
                  next_states_.begin() + (i + 1) * state_dim_);
  t.done = dones_[i] != 0;
  return t;
}

TransitionBatch ReplayBuffer::Sample(size_t n, SeededRng& rng) const {
  TOP_CHECK(size_ > 0, "ReplayBuffer::Sample: buffer is empty");
  TransitionBatch batch{Mat(n, state_dim_), Mat(n, action_dim_),
                        std::vector<double>(n), Mat(n, state_dim_),
                        std::vector<double>(n)};
  for (size_t row = 0; row < n; ++row) {
    const size_t i = rng.UniformIndex(size_);
    std::copy_n(states_.begin() + i * state_dim_, state_dim_,
                batch.states.row(row).begin());
    std::copy_n(actions_.begin() + i * action_dim_, action_dim_,
                batch.actions.row(row).begin());
    batch.rewards[row] = rewards_[i];
    std::copy_n(next_states_.begin() + i * state_dim_, state_dim_,
                batch.next_states.row(row).begin());
    batch.dones[row] = dones_[i] != 0 ? 1.0 : 0.0;
  }
  return batch;
}

}  // namespace top
