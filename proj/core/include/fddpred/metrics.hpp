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
#include <vector>

#include "fddpred/channel.hpp"

namespace fddpred {

/// Squared error normalized by the true channel energy, ||h - hhat||^2 /
/// ||h||^2. The vector overload averages per-sample values.
double nmse(const CsiMatrix& pred, const CsiMatrix& truth);
double nmse(const std::vector<CsiMatrix>& pred,
            const std::vector<CsiMatrix>& truth);

/// Normalized inner-product magnitude |<h, hhat>| / (||h|| ||hhat||), in
/// [0, 1], invariant to scaling and to a common phase rotation of the
/// prediction. The vector overload averages per-sample values.
double corr_coeff(const CsiMatrix& pred, const CsiMatrix& truth);
double corr_coeff(const std::vector<CsiMatrix>& pred,
                  const std::vector<CsiMatrix>& truth);

enum class BerMode {
  equalize,     // receiver divides by the supplied CSI (SISO)
  mrt_precode,  // transmitter beamforms with w = conj(hhat) / ||hhat||
};

struct BerCurve {
  std::vector<double> snr_points_db;
  std::vector<double> ber;
  std::uint64_t bits_per_point = 0;
  BerMode mode = BerMode::equalize;
};

/// Monte-Carlo uncoded BER of Gray-mapped QPSK operated with `used` CSI over
/// a channel defined by `truth` CSI. The grid SNR is referenced to the true
/// per-antenna subcarrier power: sigma^2 = (||h_k||^2 / M) / snr, so perfect
/// CSI on a flat SISO channel reproduces the textbook QPSK curve and MRT
/// array gain shows as a curve shift. +inf dB grid points mean zero noise.
/// Deterministic given seed; grid points run on independent sub-streams.
BerCurve ber_qpsk(const std::vector<CsiMatrix>& truth,
                  const std::vector<CsiMatrix>& used,
                  const std::vector<double>& snr_grid_db, std::uint64_t n_bits,
                  BerMode mode, std::uint64_t seed);

/// SNR (dB) at which a measured curve crosses `target_ber`, by log-linear
/// interpolation between grid points. Returns NaN if never crossed.
double ber_crossing_snr_db(const BerCurve& curve, double target_ber);

}  // namespace fddpred
