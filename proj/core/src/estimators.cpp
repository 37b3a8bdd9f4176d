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

#include "fddpred/estimators.hpp"

#include <cmath>

#include "fddpred/errors.hpp"

namespace fddpred {

std::complex<double> analytical_los_predict(std::complex<double> h_ul,
                                            double f_ul_hz, double f_dl_hz,
                                            double beta) {
  if (h_ul == std::complex<double>(0.0, 0.0))
    throw domain_error("analytical_los_predict: zero uplink coefficient");
  if (!(f_ul_hz > 0.0) || !(f_dl_hz > 0.0))
    throw domain_error("analytical_los_predict: carrier frequencies must be positive");

  const double mag_ul = std::abs(h_ul);
  const double magnitude = std::pow(f_ul_hz / f_dl_hz, beta) * mag_ul;
  const double phase =
      -f_dl_hz / (2.0 * f_ul_hz * std::pow(mag_ul, 1.0 / beta));
  return std::polar(magnitude, phase);
}

WienerModel wiener_fit(const CsiDataset& train, double sigma2,
                       WienerVariant variant) {
  if (train.samples.empty())
    throw domain_error("wiener_fit: empty training set");
  if (sigma2 < 0.0)
    throw domain_error("wiener_fit: sigma2 must be non-negative");

  const std::size_t m = train.n_antennas;
  const std::size_t k = train.samples.front().h_ul.n_subcarriers();
  const std::size_t n = train.size();

  WienerModel model;
  model.variant = variant;
  model.sigma2 = sigma2;
  model.n_antennas = static_cast<std::uint32_t>(m);
  model.r_ul_ul.resize(m);
  model.r_cross.resize(m);
  model.coeffs.resize(m);
  if (variant == WienerVariant::matched) {
    model.stored_ul.resize(m);
    model.stored_dl.resize(m);
  }

  for (std::size_t a = 0; a < m; ++a) {
    arma::cx_mat ul(k, n), dl(k, n);
    for (std::size_t i = 0; i < n; ++i) {
      ul.col(i) = train.samples[i].h_ul.values.row(a).st();
      dl.col(i) = train.samples[i].h_dl.values.row(a).st();
    }
    // biased (1/N) sample averages
    model.r_ul_ul[a] = ul * ul.t() / static_cast<double>(n);
    model.r_cross[a] = ul * dl.t() / static_cast<double>(n);

    arma::cx_mat reg = model.r_ul_ul[a];
    reg.diag() += sigma2;
    arma::cx_mat c;
    const bool ok =
        arma::solve(c, reg, model.r_cross[a],
                    arma::solve_opts::likely_sympd + arma::solve_opts::no_approx);
    if (!ok || !c.is_finite())
      throw numerical_error(
          "wiener_fit: regularized covariance solve failed (antenna " +
          std::to_string(a) + ", sigma2 = " + std::to_string(sigma2) +
          "; covariance likely rank-deficient)");
    model.coeffs[a] = c;

    if (variant == WienerVariant::matched) {
      model.stored_ul[a] = std::move(ul);
      model.stored_dl[a] = std::move(dl);
    }
  }
  return model;
}

namespace {

arma::cx_vec predict_matched(const WienerModel& model, std::size_t antenna,
                             const arma::cx_vec& query) {
  const arma::cx_mat& ul = model.stored_ul[antenna];
  const arma::cx_mat& dl = model.stored_dl[antenna];
  const double qn = arma::norm(query);
  if (qn == 0.0) return arma::cx_vec(query.n_elem, arma::fill::zeros);

  std::size_t best = 0;
  double best_corr = -1.0;
  for (arma::uword i = 0; i < ul.n_cols; ++i) {
    const double un = arma::norm(ul.col(i));
    if (un == 0.0) continue;
    const double corr = std::abs(arma::cdot(ul.col(i), query)) / (un * qn);
    if (corr > best_corr) {
      best_corr = corr;
      best = i;
    }
  }
  if (best_corr < 0.0) return arma::cx_vec(query.n_elem, arma::fill::zeros);

  // rank-one LMMSE filter of the matched point, applied to the query:
  // C_i^H q = d_i (u_i^H q) / (||u_i||^2 + sigma2)
  const arma::cx_vec u = ul.col(best);
  const std::complex<double> align = arma::cdot(u, query);
  const double u_energy = std::pow(arma::norm(u), 2.0);
  return dl.col(best) * (align / (u_energy + model.sigma2));
}

}  // namespace

CsiMatrix wiener_predict(const WienerModel& model, const CsiMatrix& h_ul) {
  if (h_ul.n_antennas() != model.n_antennas ||
      h_ul.n_subcarriers() != model.coeffs.front().n_rows)
    throw domain_error("wiener_predict: CSI dimensions do not match the model");

  CsiMatrix out;
  out.values.set_size(h_ul.n_antennas(), h_ul.n_subcarriers());
  for (std::size_t a = 0; a < h_ul.n_antennas(); ++a) {
    const arma::cx_vec query = h_ul.values.row(a).st();
    arma::cx_vec pred;
    if (model.variant == WienerVariant::global)
      pred = model.coeffs[a].t() * query;
    else
      pred = predict_matched(model, a, query);
    out.values.row(a) = pred.st();
  }
  return out;
}

}  // namespace fddpred
