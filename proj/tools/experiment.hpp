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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fddpred/dataset.hpp"
#include "fddpred/metrics.hpp"
#include "fddpred/nn/train.hpp"
#include "fddpred/precoding.hpp"

namespace fddpred::cli {

/// Rejected configuration (bad JSON, unknown keys, invalid values). Exit 1.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

enum class PredictorKind { analytical, wiener_global, wiener_matched, nn };

struct SweepGrids {
  // explicit grids override the per-kind defaults; an explicitly empty grid
  // yields a header-only CSV
  std::vector<double> delta_f_hz;
  std::vector<std::uint32_t> n_train;
  std::vector<std::uint32_t> m;
  bool delta_f_set = false;
  bool n_train_set = false;
  bool m_set = false;
};

/// Schema-validated experiment description; unknown JSON keys are rejected.
struct ExperimentConfig {
  Scenario scenario = Scenario::los_scalar;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "out";
  std::uint32_t n_samples = 5000;
  double train_fraction = 0.9;

  BandConfig band_ul;
  BandConfig band_dl;

  // scalar line-of-sight scenario
  double radius_min_m = 100.0;
  double radius_max_m = 200.0;
  double los_beta = 2.5;

  // synthetic scatterer environment scenario
  std::uint32_t env_antennas = 2;
  std::uint32_t env_scatterers = 12;
  bool env_los_blocked = false;
  double env_beta = 2.5;
  arma::vec3 env_area_min{80.0, -40.0, 1.5};
  arma::vec3 env_area_max{160.0, 40.0, 1.5};
  arma::vec3 env_scatter_min{20.0, -60.0, 2.0};
  arma::vec3 env_scatter_max{180.0, 60.0, 25.0};
  std::uint64_t env_seed = 99;

  PredictorKind predictor = PredictorKind::analytical;
  double wiener_sigma2 = 0.0;

  std::string architecture = "auto";  // auto | los | siso | mimo
  nn::TrainConfig train;

  std::vector<double> ber_snr_grid_db{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::uint64_t ber_n_bits = 1'000'000;
  BerMode ber_mode = BerMode::equalize;
  bool ber_enabled = true;

  bool precoding_enabled = false;
  std::uint32_t precoding_users = 2;
  Precoder precoder = Precoder::mrt;
  double precoding_snr_db = 10.0;
  std::uint32_t precoding_draws = 50;
  std::optional<double> precoding_sigma2;  // overrides snr-derived noise

  SweepGrids sweep;
  std::string sweep_kind;

  std::optional<std::filesystem::path> dataset_path;
  std::optional<std::filesystem::path> model_path;

  std::filesystem::path dataset_file() const {
    return dataset_path.value_or(out_dir / "dataset.fddcsi");
  }
  std::filesystem::path model_file() const {
    return model_path.value_or(out_dir / "model.fddnn");
  }
};

/// Loads and validates a config file; `overrides` come from command flags.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
};
ExperimentConfig load_config(const std::filesystem::path& path,
                             const Overrides& overrides);
ExperimentConfig default_config(const Overrides& overrides);

int cmd_generate(const ExperimentConfig& cfg);
int cmd_train(const ExperimentConfig& cfg);
int cmd_evaluate(const ExperimentConfig& cfg);
int cmd_sweep(const ExperimentConfig& cfg, const std::string& kind);

}  // namespace fddpred::cli
