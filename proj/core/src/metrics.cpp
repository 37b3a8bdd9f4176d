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

#include "fddpred/metrics.hpp"

#include <cmath>
#include <limits>

#include "fddpred/errors.hpp"
#include "fddpred/parallel.hpp"
#include "fddpred/rng.hpp"

namespace fddpred {

namespace {

void check_shapes(const CsiMatrix& pred, const CsiMatrix& truth,
                  const char* where) {
  if (pred.values.n_rows != truth.values.n_rows ||
      pred.values.n_cols != truth.values.n_cols)
    throw domain_error(std::string(where) + ": shape mismatch");
}

}  // namespace

double nmse(const CsiMatrix& pred, const CsiMatrix& truth) {
  check_shapes(pred, truth, "nmse");
  const double energy = std::pow(arma::norm(truth.values, "fro"), 2.0);
  if (energy == 0.0) throw domain_error("nmse: all-zero truth");
  const double err = std::pow(arma::norm(pred.values - truth.values, "fro"), 2.0);
  return err / energy;
}

double nmse(const std::vector<CsiMatrix>& pred,
            const std::vector<CsiMatrix>& truth) {
  if (pred.size() != truth.size() || pred.empty())
    throw domain_error("nmse: need equally sized, non-empty sample lists");
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) acc += nmse(pred[i], truth[i]);
  return acc / static_cast<double>(pred.size());
}

double corr_coeff(const CsiMatrix& pred, const CsiMatrix& truth) {
  check_shapes(pred, truth, "corr_coeff");
  const double np = arma::norm(pred.values, "fro");
  const double nt = arma::norm(truth.values, "fro");
  if (np == 0.0 || nt == 0.0)
    throw domain_error("corr_coeff: zero vector");
  const std::complex<double> inner =
      arma::accu(arma::conj(truth.values) % pred.values);
  return std::abs(inner) / (np * nt);
}

double corr_coeff(const std::vector<CsiMatrix>& pred,
                  const std::vector<CsiMatrix>& truth) {
  if (pred.size() != truth.size() || pred.empty())
    throw domain_error("corr_coeff: need equally sized, non-empty sample lists");
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    acc += corr_coeff(pred[i], truth[i]);
  return acc / static_cast<double>(pred.size());
}

namespace {

// One Monte-Carlo grid point. Symbols cycle through samples (fast) and
// subcarriers (slow) so every sample contributes at every SNR.
double ber_point(const std::vector<CsiMatrix>& truth,
                 const std::vector<CsiMatrix>& used, double snr_db,
                 std::uint64_t n_symbols, BerMode mode, std::uint64_t seed) {
  const bool zero_noise = std::isinf(snr_db);
  const double snr = std::pow(10.0, snr_db / 10.0);
  const std::size_t n_samples = truth.size();
  const std::size_t n_sub = truth.front().n_subcarriers();
  const double m = static_cast<double>(truth.front().n_antennas());

  Rng rng(seed);
  std::uint64_t errors = 0;
  for (std::uint64_t t = 0; t < n_symbols; ++t) {
    const std::size_t i = static_cast<std::size_t>(t % n_samples);
    const std::size_t k = static_cast<std::size_t>((t / n_samples) % n_sub);

    const bool b0 = rng.uniform() < 0.5;
    const bool b1 = rng.uniform() < 0.5;
    const std::complex<double> s{(b0 ? -1.0 : 1.0) * M_SQRT1_2,
                                 (b1 ? -1.0 : 1.0) * M_SQRT1_2};

    std::complex<double> decision_var;
    if (mode == BerMode::equalize) {
      const std::complex<double> h = truth[i].values(0, k);
      const std::complex<double> h_hat = used[i].values(0, k);
      const double sigma2 = zero_noise ? 0.0 : std::norm(h) / snr;
      const std::complex<double> y =
          h * s + (zero_noise ? std::complex<double>{}
                              : rng.complex_gaussian(sigma2));
      // multiplying by conj(h_hat) gives the same hard decisions as dividing
      decision_var = y * std::conj(h_hat);
    } else {
      const arma::cx_vec h = truth[i].values.col(k);
      const arma::cx_vec h_hat = used[i].values.col(k);
      const double wn = arma::norm(h_hat);
      const std::complex<double> gain =
          wn > 0.0 ? arma::sum(h % arma::conj(h_hat)) / wn
                   : std::complex<double>{};
      const double p_ant = std::pow(arma::norm(h), 2.0) / m;
      const double sigma2 = zero_noise ? 0.0 : p_ant / snr;
      decision_var = gain * s + (zero_noise ? std::complex<double>{}
                                            : rng.complex_gaussian(sigma2));
    }

    const bool d0 = decision_var.real() < 0.0;
    const bool d1 = decision_var.imag() < 0.0;
    errors += (d0 != b0) + (d1 != b1);
  }
  return static_cast<double>(errors) / static_cast<double>(2 * n_symbols);
}

}  // namespace

BerCurve ber_qpsk(const std::vector<CsiMatrix>& truth,
                  const std::vector<CsiMatrix>& used,
                  const std::vector<double>& snr_grid_db, std::uint64_t n_bits,
                  BerMode mode, std::uint64_t seed) {
  if (truth.empty() || truth.size() != used.size())
    throw domain_error("ber_qpsk: need equally sized, non-empty CSI lists");
  if (n_bits < 10'000)
    throw domain_error("ber_qpsk: need at least 10^4 bits per point");
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i].values.n_rows != used[i].values.n_rows ||
        truth[i].values.n_cols != used[i].values.n_cols)
      throw domain_error("ber_qpsk: truth/used shape mismatch");
    if (mode == BerMode::equalize && truth[i].n_antennas() != 1)
      throw domain_error("ber_qpsk: equalize mode is single-antenna");
  }

  const std::uint64_t n_symbols = (n_bits + 1) / 2;
  BerCurve curve;
  curve.snr_points_db = snr_grid_db;
  curve.ber.resize(snr_grid_db.size());
  curve.bits_per_point = 2 * n_symbols;
  curve.mode = mode;

  parallel_for(snr_grid_db.size(), [&](std::size_t g) {
    curve.ber[g] = ber_point(truth, used, snr_grid_db[g], n_symbols, mode,
                             mix_seed(seed, g));
  });
  return curve;
}

double ber_crossing_snr_db(const BerCurve& curve, double target_ber) {
  for (std::size_t i = 1; i < curve.ber.size(); ++i) {
    const double a = curve.ber[i - 1];
    const double b = curve.ber[i];
    if (a >= target_ber && b < target_ber && a > 0.0 && b > 0.0) {
      const double la = std::log10(a);
      const double lb = std::log10(b);
      const double lt = std::log10(target_ber);
      const double w = (la - lt) / (la - lb);
      return curve.snr_points_db[i - 1] +
             w * (curve.snr_points_db[i] - curve.snr_points_db[i - 1]);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace fddpred
