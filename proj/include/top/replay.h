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

#ifndef TOP_REPLAY_H_
#define TOP_REPLAY_H_

#include <vector>

#include "top/ndmath.h"

namespace top {

struct Transition {
  std::vector<double> s;
  std::vector<double> a;
  double r = 0.0;
  std::vector<double> s_next;
  // Genuine terminal state only; time-limit truncations are stored false.
  bool done = false;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// A sampled minibatch, one transition per row.
struct TransitionBatch {
  Mat states;
  Mat actions;
  std::vector<double> rewards;
  Mat next_states;
  std::vector<double> dones;  // 1.0 for terminal, else 0.0

  size_t size() const { return rewards.size(); }
};

// Fixed-capacity ring of transitions; the oldest entry is overwritten
// once full.
class ReplayBuffer {
 public:
  ReplayBuffer(size_t capacity, size_t state_dim, size_t action_dim);

  size_t capacity() const { return capacity_; }
  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  void Push(const Transition& t);
  // i-th stored entry in storage order (0 <= i < size).
  Transition Get(size_t i) const;

  // n uniform draws with replacement.
  TransitionBatch Sample(size_t n, SeededRng& rng) const;

 private:
  size_t capacity_;
  size_t state_dim_;
  size_t action_dim_;
  size_t cursor_ = 0;
  size_t size_ = 0;
  std::vector<double> states_;
  std::vector<double> actions_;
  std::vector<double> rewards_;
  std::vector<double> next_states_;
  std::vector<unsigned char> dones_;
};

}  // namespace top

#endif  // TOP_REPLAY_H_
