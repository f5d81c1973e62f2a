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

#ifndef TOP_ERRORS_H_
#define TOP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace top {

// Violated precondition: wrong dimensions, stale tapes, bad indices.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Non-finite values reached a place that requires finite numbers.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration key, value, or combination.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TOP_CHECK(cond, msg)                                      \
  do {                                                            \
    if (!(cond)) throw ::top::ContractError(std::string(msg));    \
  } while (false)

}  // namespace top

#endif  // TOP_ERRORS_H_
