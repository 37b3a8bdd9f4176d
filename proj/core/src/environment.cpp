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

#include "fddpred/environment.hpp"

#include <algorithm>
#include <cmath>

#include "fddpred/errors.hpp"
#include "fddpred/rng.hpp"

namespace fddpred {

namespace {

double power_law_gain(double total_length_m, double ref_freq_hz, double beta) {
  return std::pow(
      kSpeedOfLight / (4.0 * M_PI * ref_freq_hz * total_length_m), beta);
}

bool inside_box(const arma::vec3& p, const arma::vec3& lo,
                const arma::vec3& hi) {
  for (int i = 0; i < 3; ++i)
    if (p(i) < lo(i) || p(i) > hi(i)) return false;
  return true;
}

}  // namespace

void ScattererEnvironment::validate() const {
  if (bs_antennas.empty())
    throw domain_error("ScattererEnvironment: need at least one antenna");
  if (scatterers.size() != reflection.size())
    throw domain_error("ScattererEnvironment: one reflection coefficient per scatterer");
  for (double r : reflection)
    if (!(r > 0.0) || r > 1.0)
      throw domain_error("ScattererEnvironment: reflection coefficients must be in (0, 1]");
  if (!(pathloss_beta > 2.0))
    throw domain_error("ScattererEnvironment: pathloss exponent must exceed 2");
  if (!(ref_freq_hz > 0.0))
    throw domain_error("ScattererEnvironment: reference frequency must be positive");
  if (los_blocked && scatterers.empty())
    throw domain_error("ScattererEnvironment: blocked LoS requires at least one scatterer");
  for (int i = 0; i < 3; ++i)
    if (!(area_min(i) <= area_max(i)))
      throw domain_error("ScattererEnvironment: degenerate area bounds");
}

ScattererEnvironment ScattererEnvironment::sample(
    std::size_t n_antennas, std::size_t n_scatterers,
    const arma::vec3& area_min, const arma::vec3& area_max,
    const arma::vec3& scatter_min, const arma::vec3& scatter_max,
    double pathloss_beta, double ref_freq_hz, bool los_blocked,
    std::uint64_t seed) {
  ScattererEnvironment env;
  env.pathloss_beta = pathloss_beta;
  env.ref_freq_hz = ref_freq_hz;
  env.los_blocked = los_blocked;
  env.rng_seed = seed;
  env.area_min = area_min;
  env.area_max = area_max;

  const double spacing = kSpeedOfLight / (2.0 * ref_freq_hz);
  env.bs_antennas.reserve(n_antennas);
  for (std::size_t m = 0; m < n_antennas; ++m)
    env.bs_antennas.push_back(
        arma::vec3{static_cast<double>(m) * spacing, 0.0, 10.0});

  Rng rng(mix_seed(seed, 0x5ca7));
  env.scatterers.reserve(n_scatterers);
  env.reflection.reserve(n_scatterers);
  for (std::size_t s = 0; s < n_scatterers; ++s) {
    arma::vec3 p;
    for (int i = 0; i < 3; ++i)
      p(i) = rng.uniform(scatter_min(i), scatter_max(i));
    env.scatterers.push_back(p);
    env.reflection.push_back(rng.uniform(0.4, 1.0));
  }
  env.validate();
  return env;
}

PathSet env_paths(const ScattererEnvironment& env, std::size_t antenna_index,
                  const arma::vec3& ue_position) {
  env.validate();
  if (antenna_index >= env.n_antennas())
    throw domain_error("env_paths: antenna index out of range");
  if (!inside_box(ue_position, env.area_min, env.area_max))
    throw domain_error("env_paths: UE position outside the placement area");

  const arma::vec3& ant = env.bs_antennas[antenna_index];
  PathSet ps;

  const double d_direct = arma::norm(ue_position - ant);
  if (d_direct <= 0.0)
    throw domain_error("env_paths: UE coincides with a BS antenna");
  if (!env.los_blocked) {
    ps.paths.push_back(
        Path{power_law_gain(d_direct, env.ref_freq_hz, env.pathloss_beta),
             d_direct / kSpeedOfLight});
  }

  for (std::size_t s = 0; s < env.n_scatterers(); ++s) {
    const double d1 = arma::norm(ue_position - env.scatterers[s]);
    const double d2 = arma::norm(env.scatterers[s] - ant);
    if (d1 <= 0.0)
      throw domain_error("env_paths: UE coincides with a scatterer");
    const double total = d1 + d2;
    ps.paths.push_back(
        Path{env.reflection[s] *
                 power_law_gain(total, env.ref_freq_hz, env.pathloss_beta),
             total / kSpeedOfLight});
  }

  std::stable_sort(
      ps.paths.begin(), ps.paths.end(),
      [](const Path& a, const Path& b) { return a.delay_s < b.delay_s; });
  ps.validate();
  return ps;
}

}  // namespace fddpred
