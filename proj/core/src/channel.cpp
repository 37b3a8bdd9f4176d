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

#include "fddpred/channel.hpp"

#include <algorithm>
#include <cmath>

#include "fddpred/errors.hpp"
#include "fddpred/rng.hpp"

namespace fddpred {

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = M_PI * x;
  return std::sin(px) / px;
}

}  // namespace

void PathSet::validate() const {
  if (paths.empty()) throw domain_error("PathSet: need at least one path");
  double prev = -1.0;
  for (const Path& p : paths) {
    if (!std::isfinite(p.gain) || p.gain < 0.0)
      throw domain_error("PathSet: gains must be finite and non-negative");
    if (!std::isfinite(p.delay_s) || p.delay_s < 0.0)
      throw domain_error("PathSet: delays must be finite and non-negative");
    if (p.delay_s < prev)
      throw domain_error("PathSet: delays must be sorted ascending");
    prev = p.delay_s;
  }
}

std::complex<double> los_coefficient(double distance_m, double center_freq_hz,
                                     double beta) {
  if (!(distance_m > 0.0))
    throw domain_error("los_coefficient: distance must be positive");
  if (!(center_freq_hz > 0.0))
    throw domain_error("los_coefficient: carrier frequency must be positive");
  const double magnitude =
      std::pow(kSpeedOfLight / (4.0 * M_PI * center_freq_hz * distance_m), beta);
  const double phase =
      -2.0 * M_PI * center_freq_hz * distance_m / kSpeedOfLight;
  return std::polar(magnitude, phase);
}

BasebandTaps to_baseband(const PathSet& paths, double center_freq_hz,
                         double bandwidth_hz, double eps,
                         std::uint32_t max_taps) {
  paths.validate();
  if (!(bandwidth_hz > 0.0))
    throw domain_error("to_baseband: bandwidth must be positive");
  if (!(eps > 0.0)) throw domain_error("to_baseband: eps must be positive");
  if (max_taps == 0) throw domain_error("to_baseband: max_taps must be >= 1");

  std::vector<std::complex<double>> taps(max_taps);
  for (const Path& p : paths.paths) {
    const std::complex<double> rot =
        std::polar(p.gain, -2.0 * M_PI * center_freq_hz * p.delay_s);
    const double frac = p.delay_s * bandwidth_hz;
    for (std::uint32_t l = 0; l < max_taps; ++l)
      taps[l] += rot * sinc(static_cast<double>(l) - frac);
  }

  double peak = 0.0;
  for (const auto& t : taps) peak = std::max(peak, std::abs(t));
  // L = index past the last tap at or above eps relative to the peak
  std::size_t length = 1;
  if (peak > 0.0) {
    const double threshold = eps * peak;
    for (std::size_t l = 0; l < taps.size(); ++l)
      if (std::abs(taps[l]) >= threshold) length = l + 1;
  }
  taps.resize(length);
  return BasebandTaps{std::move(taps), eps};
}

arma::cx_rowvec freq_response(const PathSet& paths, const BandConfig& band) {
  paths.validate();
  band.validate();
  arma::cx_rowvec h(band.n_used, arma::fill::zeros);
  for (std::uint32_t k = 0; k < band.n_used; ++k) {
    const double f = band.center_freq_hz + band.used_offset_hz(k);
    std::complex<double> acc = 0.0;
    for (const Path& p : paths.paths)
      acc += std::polar(p.gain, -2.0 * M_PI * f * p.delay_s);
    h(k) = acc;
  }
  return h;
}

CsiMatrix add_awgn(const CsiMatrix& csi, double snr_db, std::uint64_t seed) {
  if (!csi.values.is_finite())
    throw domain_error("add_awgn: input CSI must be finite");
  if (std::isinf(snr_db) || csi.values.n_elem == 0) return csi;

  const double mean_power =
      arma::accu(arma::square(arma::abs(csi.values))) /
      static_cast<double>(csi.values.n_elem);
  const double noise_var = mean_power * std::pow(10.0, -snr_db / 10.0);

  Rng rng(seed);
  CsiMatrix out = csi;
  for (arma::uword i = 0; i < out.values.n_elem; ++i)
    out.values(i) += rng.complex_gaussian(noise_var);
  return out;
}

}  // namespace fddpred
