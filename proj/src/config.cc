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

#include "top/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "top/errors.h"
#include "top/metrics.h"

namespace top {
namespace {

std::string Trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string Unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

// Exact round-trip formatting for the resolved config.
std::string ExactReal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::optional<double> ParseReal(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

template <typename Int>
std::optional<Int> ParseInt(const std::string& s) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string> SplitList(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(Trim(part));
  return parts;
}

struct KeyDef {
  std::string expected;
  // Returns false when the text does not parse.
  std::function<bool(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

KeyDef RealKey(double TrainConfig::*field) {
  return {"a real number",
          [field](RunConfig& c, const std::string& v) {
            const auto x = ParseReal(v);
            if (!x) return false;
            c.train.*field = *x;
            return true;
          },
          [field](const RunConfig& c) { return ExactReal(c.train.*field); }};
}

KeyDef NoiseKey(double NoiseSpec::*field) {
  return {"a real number",
          [field](RunConfig& c, const std::string& v) {
            const auto x = ParseReal(v);
            if (!x) return false;
            c.train.noise.*field = *x;
            return true;
          },
          [field](const RunConfig& c) {
            return ExactReal(c.train.noise.*field);
          }};
}

template <typename Owner>
KeyDef IntKey(int64_t Owner::*field, std::function<Owner&(RunConfig&)> owner,
              std::function<const Owner&(const RunConfig&)> cowner) {
  return {"an integer",
          [field, owner](RunConfig& c, const std::string& v) {
            const auto x = ParseInt<int64_t>(v);
            if (!x) return false;
            owner(c).*field = *x;
            return true;
          },
          [field, cowner](const RunConfig& c) {
            return std::to_string(cowner(c).*field);
          }};
}

KeyDef TrainInt(int64_t TrainConfig::*field) {
  return IntKey<TrainConfig>(
      field, [](RunConfig& c) -> TrainConfig& { return c.train; },
      [](const RunConfig& c) -> const TrainConfig& { return c.train; });
}

KeyDef RunInt(int64_t RunConfig::*field) {
  return IntKey<RunConfig>(
      field, [](RunConfig& c) -> RunConfig& { return c; },
      [](const RunConfig& c) -> const RunConfig& { return c; });
}

const std::map<std::string, KeyDef>& KeyTable() {
  static const std::map<std::string, KeyDef> table = [] {
    std::map<std::string, KeyDef> t;
    t["run.name"] = {"a name",
                     [](RunConfig& c, const std::string& v) {
                       if (v.empty()) return false;
                       c.run_name = v;
                       return true;
                     },
                     [](const RunConfig& c) { return c.run_name; }};
    t["run.out_dir"] = {"a directory path",
                        [](RunConfig& c, const std::string& v) {
                          if (v.empty()) return false;
                          c.out_dir = v;
                          return true;
                        },
                        [](const RunConfig& c) { return c.out_dir; }};
    t["run.seeds"] = RunInt(&RunConfig::num_seeds);
    t["run.flush_interval"] = RunInt(&RunConfig::flush_interval);
    t["env"] = {"pendulum|pointmass|diag-const|diag-uniform|diag-bernoulli",
                [](RunConfig& c, const std::string& v) {
                  if (!IsKnownEnv(v)) return false;
                  c.train.env = v;
                  return true;
                },
                [](const RunConfig& c) { return c.train.env; }};
    t["seed"] = {"an unsigned 64-bit integer",
                 [](RunConfig& c, const std::string& v) {
                   const auto x = ParseInt<uint64_t>(v);
                   if (!x) return false;
                   c.train.seed = *x;
                   return true;
                 },
                 [](const RunConfig& c) { return std::to_string(c.train.seed); }};
    t["gamma"] = RealKey(&TrainConfig::gamma);
    t["polyak_tau"] = RealKey(&TrainConfig::polyak_tau);
    t["policy_delay"] = TrainInt(&TrainConfig::policy_delay);
    t["batch_size"] = TrainInt(&TrainConfig::batch_size);
    t["total_steps"] = TrainInt(&TrainConfig::total_steps);
    t["random_action_steps"] = TrainInt(&TrainConfig::random_action_steps);
    t["collection_steps"] = TrainInt(&TrainConfig::collection_steps);
    t["replay_capacity"] = TrainInt(&TrainConfig::replay_capacity);
    t["hidden"] = {"colon-separated layer sizes, e.g. 64:64",
                   [](RunConfig& c, const std::string& v) {
                     std::vector<size_t> sizes;
                     for (const std::string& p : SplitList(v, ':')) {
                       const auto x = ParseInt<size_t>(p);
                       if (!x) return false;
                       sizes.push_back(*x);
                     }
                     if (sizes.empty()) return false;
                     c.train.hidden = sizes;
                     return true;
                   },
                   [](const RunConfig& c) {
                     std::string s;
                     for (size_t i = 0; i < c.train.hidden.size(); ++i) {
                       if (i > 0) s += ':';
                       s += std::to_string(c.train.hidden[i]);
                     }
                     return s;
                   }};
    t["quantiles"] = TrainInt(&TrainConfig::num_quantiles);
    t["kappa"] = RealKey(&TrainConfig::kappa);
    t["actor_lr"] = RealKey(&TrainConfig::actor_lr);
    t["critic_lr"] = RealKey(&TrainConfig::critic_lr);
    t["noise.rollout_sigma"] = NoiseKey(&NoiseSpec::rollout_sigma);
    t["noise.target_sigma"] = NoiseKey(&NoiseSpec::target_sigma);
    t["noise.target_clip"] = NoiseKey(&NoiseSpec::clip_c);
    t["beta_options"] = {"comma-separated reals, e.g. -1,0",
                         [](RunConfig& c, const std::string& v) {
                           std::vector<double> arms;
                           for (const std::string& p : SplitList(v, ',')) {
                             const auto x = ParseReal(p);
                             if (!x) return false;
                             arms.push_back(*x);
                           }
                           if (arms.empty()) return false;
                           c.train.beta_options = arms;
                           return true;
                         },
                         [](const RunConfig& c) {
                           std::string s;
                           for (size_t i = 0; i < c.train.beta_options.size();
                                ++i) {
                             if (i > 0) s += ',';
                             s += ExactReal(c.train.beta_options[i]);
                           }
                           return s;
                         }};
    t["bandit.eta"] = RealKey(&TrainConfig::bandit_eta);
    t["env.reward_noise_std"] = RealKey(&TrainConfig::reward_noise_std);
    t["env.diag_constant"] = RealKey(&TrainConfig::diag_constant);
    t["env.integrator"] = {
        "explicit|semi-implicit",
        [](RunConfig& c, const std::string& v) {
          if (v == "explicit") {
            c.train.integrator = Integrator::kExplicitEuler;
          } else if (v == "semi-implicit") {
            c.train.integrator = Integrator::kSemiImplicitEuler;
          } else {
            return false;
          }
          return true;
        },
        [](const RunConfig& c) {
          return std::string(c.train.integrator == Integrator::kExplicitEuler
                                 ? "explicit"
                                 : "semi-implicit");
        }};
    t["eval_interval"] = TrainInt(&TrainConfig::eval_interval);
    t["eval_episodes"] = TrainInt(&TrainConfig::eval_episodes);
    return t;
  }();
  return table;
}

std::vector<std::string> RunConfigErrors(const RunConfig& config) {
  std::vector<std::string> errors = ValidateTrainConfig(config.train);
  if (config.num_seeds < 1) errors.push_back("run.seeds: must be >= 1");
  if (config.flush_interval < 0) {
    errors.push_back("run.flush_interval: must be >= 0");
  }
  return errors;
}

[[noreturn]] void ThrowAll(const std::vector<std::string>& errors) {
  std::string msg = "config error:";
  for (const std::string& e : errors) msg += "\n  " + e;
  throw ConfigError(msg);
}

}  // namespace

KeyValue SplitAssignment(const std::string& text) {
  const size_t eq = text.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("expected key=value, got '" + text + "'");
  }
  return {Trim(text.substr(0, eq)), Unquote(Trim(text.substr(eq + 1)))};
}

std::vector<KeyValue> ParseConfigText(const std::string& text) {
  std::vector<KeyValue> kvs;
  std::vector<std::string> errors;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) +
                       ": expected key = value");
      continue;
    }
    KeyValue kv = SplitAssignment(line);
    if (!seen.insert(kv.first).second) {
      errors.push_back("line " + std::to_string(line_no) + ": duplicate key '" +
                       kv.first + "'");
      continue;
    }
    kvs.push_back(std::move(kv));
  }
  if (!errors.empty()) ThrowAll(errors);
  return kvs;
}

void ApplyAssignments(RunConfig& config, const std::vector<KeyValue>& kvs) {
  const auto& table = KeyTable();
  std::vector<std::string> errors;
  for (const auto& [key, value] : kvs) {
    const auto it = table.find(key);
    if (it == table.end()) {
      errors.push_back(key + ": unknown key");
      continue;
    }
    if (!it->second.set(config, value)) {
      errors.push_back(key + ": expected " + it->second.expected + ", got '" +
                       value + "'");
    }
  }
  for (const std::string& e : RunConfigErrors(config)) errors.push_back(e);
  if (!errors.empty()) ThrowAll(errors);
}

void ValidateRunConfig(const RunConfig& config) {
  const std::vector<std::string> errors = RunConfigErrors(config);
  if (!errors.empty()) ThrowAll(errors);
}

RunConfig LoadRunConfig(const std::optional<std::string>& path,
                        const std::vector<KeyValue>& overrides) {
  std::vector<KeyValue> kvs;
  if (path.has_value()) {
    std::ifstream in(*path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + *path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    kvs = ParseConfigText(text.str());
  }
  kvs.insert(kvs.end(), overrides.begin(), overrides.end());
  RunConfig config;
  ApplyAssignments(config, kvs);
  return config;
}

std::string FormatRunConfig(const RunConfig& config) {
  std::string out;
  for (const auto& [key, def] : KeyTable()) {
    out += key + " = " + def.get(config) + '\n';
  }
  return out;
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const auto& [key, def] : KeyTable()) keys.push_back(key);
  return keys;
}

}  // namespace top
