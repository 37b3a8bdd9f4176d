// SPDX-License-Identifier: Apache-2.0
//
// fddpred - uplink-to-downlink CSI prediction testbench for FDD systems
// Copyright (C) 2025-2026 the fddpred contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "fddpred/errors.hpp"

namespace {

// exit codes: 0 ok, 1 config error, 2 data error, 3 numerical failure
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct Args {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::string sweep_kind;
};

fddpred::cli::ExperimentConfig make_config(const Args& args) {
  fddpred::cli::Overrides overrides;
  overrides.seed = args.seed;
  if (args.out_dir) overrides.out_dir = *args.out_dir;
  if (args.config_path.empty())
    return fddpred::cli::default_config(overrides);
  return fddpred::cli::load_config(args.config_path, overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FDD uplink-to-downlink CSI prediction testbench"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --config/--seed/--out appear after the subcommand

  Args args;
  app.add_option("--config", args.config_path, "JSON experiment config");
  app.add_option("--seed", args.seed, "Override the config seed");
  app.add_option("--out", args.out_dir, "Override the output directory");

  auto* generate =
      app.add_subcommand("generate", "Generate a dataset file (FDDCSI01)");
  auto* train =
      app.add_subcommand("train", "Train a network on a dataset file");
  auto* evaluate = app.add_subcommand(
      "evaluate", "Score a predictor on the test split of a dataset");
  auto* sweep = app.add_subcommand(
      "sweep", "Multi-run CSV sweeps (fig3|fig4|fig9|nmse_vs_samples|sumrate_vs_antennas)");
  sweep->add_option("kind", args.sweep_kind, "Sweep kind");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    const fddpred::cli::ExperimentConfig cfg = make_config(args);
    if (generate->parsed()) return fddpred::cli::cmd_generate(cfg);
    if (train->parsed()) return fddpred::cli::cmd_train(cfg);
    if (evaluate->parsed()) return fddpred::cli::cmd_evaluate(cfg);
    if (sweep->parsed()) return fddpred::cli::cmd_sweep(cfg, args.sweep_kind);
    std::cerr << "error: no subcommand\n";
    return kExitConfig;
  } catch (const fddpred::cli::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fddpred::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fddpred::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const fddpred::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
