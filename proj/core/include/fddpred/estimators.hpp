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
#include <vector>

#include "fddpred/dataset.hpp"

namespace fddpred {

/// Closed-form downlink coefficient from an uplink observation under the
/// pure line-of-sight power-law model: recovers the distance from |h_UL|,
/// then evaluates the downlink model at that distance,
///
///   h_DL = (f_UL / f_DL)^beta |h_UL| exp(-j f_DL / (2 f_UL |h_UL|^{1/beta})).
std::complex<double> analytical_los_predict(std::complex<double> h_ul,
                                            double f_ul_hz, double f_dl_hz,
                                            double beta);

enum class WienerVariant {
  global,   // one filter from whole-set statistics (default baseline)
  matched,  // nearest stored training point supplies a rank-one filter
};

/// Second-order statistics and LMMSE filter coefficients, per antenna.
struct WienerModel {
  WienerVariant variant = WienerVariant::global;
  double sigma2 = 0.0;
  std::uint32_t n_antennas = 1;
  std::vector<arma::cx_mat> r_ul_ul;   // per antenna, n_used x n_used
  std::vector<arma::cx_mat> r_cross;   // E[h_UL h_DL^H]
  std::vector<arma::cx_mat> coeffs;    // (R + sigma2 I)^{-1} R_cross
  std::vector<arma::cx_mat> stored_ul; // matched variant: columns = train UL
  std::vector<arma::cx_mat> stored_dl; // matched variant: columns = train DL
};

/// Fits LMMSE filter coefficients from biased (1/N) sample covariances:
/// C = (R_ULUL + sigma2 I)^{-1} E[h_UL h_DL^H], independently per antenna.
WienerModel wiener_fit(const CsiDataset& train, double sigma2,
                       WienerVariant variant = WienerVariant::global);

/// Global variant: h_DL = C^H h_UL per antenna. Matched variant: picks the
/// stored training uplink vector with the largest normalized |inner product|
/// against the query and applies that point's rank-one LMMSE filter.
CsiMatrix wiener_predict(const WienerModel& model, const CsiMatrix& h_ul);

}  // namespace fddpred
