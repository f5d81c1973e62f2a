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

// Command-line entry point: train, eval, sweep, ablate, plot.
//
// Exit codes: 0 success, 1 run failure, 2 configuration error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "top/agent.h"
#include "top/checkpoint.h"
#include "top/config.h"
#include "top/errors.h"
#include "top/metrics.h"
#include "top/plot.h"
#include "top/sweep.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRunFailure = 1;
constexpr int kExitConfigError = 2;

struct CommonFlags {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::string env;
  std::string out;
  std::vector<std::string> sets;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "key=value config file");
  cmd->add_option("--seed", flags.seed, "random seed");
  cmd->add_option("--env", flags.env, "environment name");
  cmd->add_option("--out", flags.out, "output directory");
  cmd->add_option("--set", flags.sets, "override key=value (repeatable)");
}

top::RunConfig ResolveConfig(const CommonFlags& flags) {
  std::vector<top::KeyValue> overrides;
  for (const std::string& s : flags.sets) {
    overrides.push_back(top::SplitAssignment(s));
  }
  if (flags.seed) overrides.emplace_back("seed", std::to_string(*flags.seed));
  if (!flags.env.empty()) overrides.emplace_back("env", flags.env);
  if (!flags.out.empty()) overrides.emplace_back("run.out_dir", flags.out);
  std::optional<std::string> path;
  if (!flags.config_path.empty()) path = flags.config_path;
  return top::LoadRunConfig(path, overrides);
}

std::vector<uint64_t> ParseSeeds(const std::string& text) {
  std::vector<uint64_t> seeds;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty()) continue;
    try {
      size_t used = 0;
      seeds.push_back(std::stoull(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw top::ConfigError("--seeds: expected comma-separated integers, got '" +
                             text + "'");
    }
  }
  return seeds;
}

std::string LatestCheckpoint(const std::string& dir) {
  std::string best;
  const auto ckpt_dir = std::filesystem::path(dir) / "checkpoints";
  if (!std::filesystem::exists(ckpt_dir)) return best;
  for (const auto& entry : std::filesystem::directory_iterator(ckpt_dir)) {
    if (entry.path().extension() == ".manifest" &&
        entry.path().string() > best) {
      best = entry.path().string();
    }
  }
  return best;
}

int RunTrain(const top::RunConfig& config) {
  const top::RunResult result = top::TrainRun(config, config.out_dir);
  if (result.aborted) {
    std::cerr << "run aborted at step " << result.steps_completed << ": "
              << result.error << "\n";
    return kExitRunFailure;
  }
  std::optional<double> last_eval;
  for (const top::MetricsRow& row : result.metrics) {
    if (row.eval_return) last_eval = row.eval_return;
  }
  std::cout << "steps=" << result.steps_completed
            << " episodes=" << result.trace.size();
  if (last_eval) std::cout << " final_eval_return=" << top::FormatReal(*last_eval);
  std::cout << " out=" << config.out_dir << "\n";
  return kExitOk;
}

int RunEval(const top::RunConfig& config, std::string checkpoint,
            int64_t episodes) {
  if (checkpoint.empty()) checkpoint = LatestCheckpoint(config.out_dir);
  if (checkpoint.empty()) {
    std::cerr << "no checkpoint found under " << config.out_dir << "\n";
    return kExitRunFailure;
  }
  top::TopAgent agent(config.train);
  const top::Checkpoint ckpt = top::ReadCheckpoint(checkpoint);
  top::RestoreCheckpoint(ckpt, agent);
  const double mean = agent.Evaluate(episodes > 0 ? episodes
                                                  : config.train.eval_episodes);
  std::cout << "checkpoint=" << checkpoint << " step=" << ckpt.step
            << " eval_return=" << top::FormatReal(mean) << "\n";
  return kExitOk;
}

int RunSweepCommand(const top::RunConfig& config, const std::string& seeds_text,
                    const std::vector<top::Variant>& variants, int jobs) {
  std::vector<uint64_t> seeds = ParseSeeds(seeds_text);
  if (seeds.empty()) {
    for (int64_t i = 0; i < config.num_seeds; ++i) {
      seeds.push_back(config.train.seed + static_cast<uint64_t>(i));
    }
  }
  const top::SweepResult result =
      top::RunSweep(config, seeds, variants, config.out_dir, jobs);
  for (const top::SweepRunStatus& run : result.runs) {
    std::cout << run.variant << " seed=" << run.seed << " "
              << (run.ok ? "ok" : "FAILED: " + run.error) << "\n";
  }
  std::cout << "aggregate=" << config.out_dir << "/aggregate.csv\n";
  return result.all_ok() ? kExitOk : kExitRunFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Actor-critic training with adaptive optimism"};
  app.require_subcommand(1);

  CommonFlags train_flags;
  CLI::App* train = app.add_subcommand("train", "train one run");
  AddCommonFlags(train, train_flags);

  CommonFlags eval_flags;
  std::string checkpoint;
  int64_t episodes = 0;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint");
  AddCommonFlags(eval, eval_flags);
  eval->add_option("--checkpoint", checkpoint,
                   "manifest path (default: latest under --out)");
  eval->add_option("--episodes", episodes, "evaluation episodes");

  CommonFlags sweep_flags;
  std::string sweep_seeds;
  std::vector<std::string> variant_texts;
  int sweep_jobs = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "seed x variant sweep");
  AddCommonFlags(sweep, sweep_flags);
  sweep->add_option("--seeds", sweep_seeds, "comma-separated seeds");
  sweep->add_option("--variant", variant_texts,
                    "name[:key=value;key=value] (repeatable)");
  sweep->add_option("--jobs", sweep_jobs, "parallel runs");

  CommonFlags ablate_flags;
  std::string ablate_seeds;
  int ablate_jobs = 1;
  CLI::App* ablate = app.add_subcommand(
      "ablate", "sweep adaptive vs fixed optimistic/pessimistic variants");
  AddCommonFlags(ablate, ablate_flags);
  ablate->add_option("--seeds", ablate_seeds, "comma-separated seeds");
  ablate->add_option("--jobs", ablate_jobs, "parallel runs");

  std::vector<std::string> plot_inputs;
  std::string plot_out = "plots";
  CLI::App* plot = app.add_subcommand("plot", "render SVG charts from CSVs");
  plot->add_option("csv", plot_inputs, "metrics/optimism/aggregate CSVs")
      ->required();
  plot->add_option("--out", plot_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*train) return RunTrain(ResolveConfig(train_flags));
    if (*eval) return RunEval(ResolveConfig(eval_flags), checkpoint, episodes);
    if (*sweep) {
      std::vector<top::Variant> variants;
      for (const std::string& v : variant_texts) {
        variants.push_back(top::ParseVariant(v));
      }
      if (variants.empty()) variants.push_back(top::Variant{"base", {}});
      return RunSweepCommand(ResolveConfig(sweep_flags), sweep_seeds, variants,
                             sweep_jobs);
    }
    if (*ablate) {
      return RunSweepCommand(ResolveConfig(ablate_flags), ablate_seeds,
                             top::AblationVariants(), ablate_jobs);
    }
    if (*plot) {
      for (const std::string& path : top::WritePlots(
               top::LoadPlotData(plot_inputs), plot_out)) {
        std::cout << path << "\n";
      }
      return kExitOk;
    }
  } catch (const top::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRunFailure;
  }
  return kExitOk;
}
