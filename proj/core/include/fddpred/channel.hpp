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
#include <complex>
#include <cstdint>
#include <vector>

#include "fddpred/band.hpp"

namespace fddpred {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

/// One propagation path: real attenuation and absolute delay.
struct Path {
  double gain = 0.0;     // dimensionless, >= 0
  double delay_s = 0.0;  // seconds, >= 0
};

/// Multipath description of a channel. Paths are kept sorted by delay.
struct PathSet {
  std::vector<Path> paths;

  std::size_t count() const { return paths.size(); }
  void validate() const;  // throws domain_error on empty/unsorted/bad values
};

/// Discrete-time baseband channel taps h_0 .. h_{L-1} at sampling rate W.
struct BasebandTaps {
  std::vector<std::complex<double>> taps;
  double truncation_threshold = 0.0;  // relative to the largest tap magnitude

  std::size_t length() const { return taps.size(); }
};

/// Complex frequency response, one row per BS antenna, one column per used
/// subcarrier (1 x 1 in the scalar line-of-sight scenario).
struct CsiMatrix {
  arma::cx_mat values;

  std::size_t n_antennas() const { return values.n_rows; }
  std::size_t n_subcarriers() const { return values.n_cols; }
};

/// Free-space line-of-sight channel coefficient at distance d and carrier
/// f_c: magnitude (c / (4 pi f_c d))^beta, phase -2 pi f_c d / c.
std::complex<double> los_coefficient(double distance_m, double center_freq_hz,
                                     double beta);

/// Sampled baseband taps of a multipath channel observed over bandwidth W
/// centered at f_c:
///
///   h_l = sum_p a_p exp(-j 2 pi f_c tau_p) sinc(l - tau_p W)
///
/// The tap count L is the smallest count such that every later tap within
/// the cap has magnitude below eps relative to the largest tap.
BasebandTaps to_baseband(const PathSet& paths, double center_freq_hz,
                         double bandwidth_hz, double eps = 1e-4,
                         std::uint32_t max_taps = 1024);

/// Exact per-subcarrier frequency response of a multipath channel on one
/// band: H[k] = sum_p a_p exp(-j 2 pi (f_c + f_k) tau_p).
arma::cx_rowvec freq_response(const PathSet& paths, const BandConfig& band);

/// Adds circularly symmetric white Gaussian noise so that the per-entry
/// SNR ||h||^2 / (2 sigma^2) meets snr_db (sigma^2 = per-dimension noise
/// variance). snr_db = +inf returns the input unchanged.
CsiMatrix add_awgn(const CsiMatrix& csi, double snr_db, std::uint64_t seed);

}  // namespace fddpred
