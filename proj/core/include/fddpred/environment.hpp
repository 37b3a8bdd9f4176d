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

#include <armadillo>
#include <cstdint>
#include <vector>

#include "fddpred/channel.hpp"

namespace fddpred {

/// Fixed scatterer geometry generating spatially consistent multipath
/// channels: the same UE position always sees the same paths. Path gains
/// follow a (c / (4 pi f_ref d))^beta power law over the total path length,
/// evaluated once at the reference (uplink) carrier; frequency dependence
/// enters only through the phase terms of the band evaluation.
struct ScattererEnvironment {
  std::vector<arma::vec3> bs_antennas;   // M antenna positions, meters
  std::vector<arma::vec3> scatterers;    // S single-bounce scatterer points
  std::vector<double> reflection;        // per-scatterer coefficient in (0, 1]
  arma::vec3 area_min{};                 // UE placement box
  arma::vec3 area_max{};
  double pathloss_beta = 2.5;            // > 2
  double ref_freq_hz = 0.0;              // gain reference carrier (UL center)
  bool los_blocked = false;
  std::uint64_t rng_seed = 0;            // seed the geometry was sampled from

  std::size_t n_antennas() const { return bs_antennas.size(); }
  std::size_t n_scatterers() const { return scatterers.size(); }
  void validate() const;

  /// Samples a random environment: a half-wavelength uniform linear array at
  /// the origin (height 10 m), n_scatterers points uniform in scatter_box,
  /// reflection coefficients uniform in [0.4, 1.0]. Deterministic by seed.
  static ScattererEnvironment sample(std::size_t n_antennas,
                                     std::size_t n_scatterers,
                                     const arma::vec3& area_min,
                                     const arma::vec3& area_max,
                                     const arma::vec3& scatter_min,
                                     const arma::vec3& scatter_max,
                                     double pathloss_beta, double ref_freq_hz,
                                     bool los_blocked, std::uint64_t seed);
};

/// Deterministic multipath breakdown for one UE position and one BS antenna:
/// the optional direct path plus one single-bounce path per scatterer,
/// sorted by delay. Throws domain_error if the UE is outside the area or
/// coincides with an antenna or scatterer.
PathSet env_paths(const ScattererEnvironment& env, std::size_t antenna_index,
                  const arma::vec3& ue_position);

}  // namespace fddpred
