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
#include <string>
#include <utility>
#include <vector>

#include "fddpred/band.hpp"
#include "fddpred/channel.hpp"
#include "fddpred/environment.hpp"

namespace fddpred {

/// One labeled sample: uplink CSI observation and downlink CSI label, both
/// generated from the same UE position and physical paths.
struct CsiSample {
  arma::vec3 ue_position{};
  CsiMatrix h_ul;
  CsiMatrix h_dl;
};

enum class Scenario : std::uint32_t {
  los_scalar = 0,
  synthetic_env = 1,
};

struct CsiDataset {
  std::vector<CsiSample> samples;
  BandConfig band_ul;
  BandConfig band_dl;
  std::uint32_t n_antennas = 1;
  Scenario scenario = Scenario::los_scalar;
  std::uint64_t env_seed = 0;  // in-memory metadata only, not serialized

  std::size_t size() const { return samples.size(); }
  double delta_f_hz() const {
    return band_dl.center_freq_hz - band_ul.center_freq_hz;
  }
};

/// Scalar line-of-sight dataset: one 1x1 coefficient per band, UE distances
/// uniform in [radius_min, radius_max].
CsiDataset generate_los_scalar_dataset(std::size_t n, double radius_min_m,
                                       double radius_max_m, double f_ul_hz,
                                       double f_dl_hz, double beta,
                                       std::uint64_t seed);

/// Multi-antenna OFDM dataset over a scatterer environment: UE positions
/// uniform over the environment area (fixed height 1.5 m), per-antenna paths
/// evaluated on both bands. Bands must share bandwidth and grid.
CsiDataset generate_env_dataset(const ScattererEnvironment& env,
                                const BandConfig& band_ul,
                                const BandConfig& band_dl, std::size_t n,
                                std::uint64_t seed);

/// Random disjoint split; train receives floor(fraction * N) samples.
std::pair<CsiDataset, CsiDataset> split(const CsiDataset& ds,
                                        double train_fraction,
                                        std::uint64_t seed);

/// FDDCSI01 binary container (little-endian, float32 payload).
void save(const CsiDataset& ds, const std::filesystem::path& path);
CsiDataset load(const std::filesystem::path& path);

inline constexpr char kDatasetMagic[8] = {'F', 'D', 'D', 'C', 'S', 'I', '0', '1'};

}  // namespace fddpred
