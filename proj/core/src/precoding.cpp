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

#include "fddpred/precoding.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "fddpred/errors.hpp"
#include "fddpred/rng.hpp"

namespace fddpred {

MultiUserChannel stack_users(const std::vector<const CsiMatrix*>& users) {
  if (users.empty()) throw domain_error("stack_users: no users");
  const std::size_t m = users.front()->n_antennas();
  const std::size_t k = users.front()->n_subcarriers();
  for (const CsiMatrix* u : users)
    if (u->n_antennas() != m || u->n_subcarriers() != k)
      throw domain_error("stack_users: inconsistent user dimensions");

  MultiUserChannel ch;
  ch.h.resize(k);
  for (std::size_t sc = 0; sc < k; ++sc) {
    arma::cx_mat hk(users.size(), m);
    for (std::size_t u = 0; u < users.size(); ++u)
      hk.row(u) = users[u]->values.col(sc).st();
    ch.h[sc] = std::move(hk);
  }
  return ch;
}

std::vector<arma::cx_mat> mrt_weights(const MultiUserChannel& h_hat) {
  std::vector<arma::cx_mat> w;
  w.reserve(h_hat.h.size());
  for (const arma::cx_mat& hk : h_hat.h) w.push_back(hk.t());
  return w;
}

std::vector<arma::cx_mat> zf_weights(const MultiUserChannel& h_hat) {
  if (h_hat.n_users() > h_hat.n_antennas())
    throw domain_error("zf_weights: more users than antennas");

  std::vector<arma::cx_mat> w;
  w.reserve(h_hat.h.size());
  std::vector<std::size_t> singular;
  for (std::size_t k = 0; k < h_hat.h.size(); ++k) {
    const arma::cx_mat& hk = h_hat.h[k];
    const arma::cx_mat gram = hk * hk.t();
    arma::cx_mat inv;
    if (arma::inv_sympd(inv, gram) && inv.is_finite()) {
      w.push_back(hk.t() * inv);
    } else {
      singular.push_back(k);
      w.emplace_back(hk.n_cols, hk.n_rows, arma::fill::zeros);
    }
  }
  if (!singular.empty()) {
    std::string which;
    for (std::size_t i = 0; i < singular.size() && i < 16; ++i)
      which += (i ? ", " : "") + std::to_string(singular[i]);
    if (singular.size() > 16) which += ", ...";
    throw numerical_error("zf_weights: rank-deficient channel at subcarrier(s) " +
                          which);
  }
  return w;
}

void normalize_frobenius(std::vector<arma::cx_mat>& w) {
  for (arma::cx_mat& wk : w) {
    const double n = arma::norm(wk, "fro");
    if (n > 0.0) wk /= n;
  }
}

arma::mat sinr_per_user(const MultiUserChannel& h_true,
                        const std::vector<arma::cx_mat>& w_normalized,
                        double sigma2) {
  if (h_true.h.size() != w_normalized.size())
    throw domain_error("sinr_per_user: subcarrier count mismatch");
  const std::size_t n_users = h_true.n_users();

  arma::mat sinr(n_users, h_true.h.size());
  for (std::size_t k = 0; k < h_true.h.size(); ++k) {
    const arma::cx_mat coupling = h_true.h[k] * w_normalized[k];  // users x users
    for (std::size_t u = 0; u < n_users; ++u) {
      const double signal = std::norm(coupling(u, u));
      double interference = 0.0;
      for (std::size_t j = 0; j < n_users; ++j)
        if (j != u) interference += std::norm(coupling(u, j));
      sinr(u, k) = signal / (interference + sigma2);
    }
  }
  return sinr;
}

double sum_rate(const arma::mat& sinr) {
  if (sinr.n_elem == 0) return 0.0;
  if (sinr.min() < 0.0)
    throw domain_error("sum_rate: SINR values must be non-negative");
  double acc = 0.0;
  for (arma::uword k = 0; k < sinr.n_cols; ++k)
    for (arma::uword u = 0; u < sinr.n_rows; ++u)
      acc += std::log2(1.0 + sinr(u, k));
  return acc / static_cast<double>(sinr.n_cols);
}

std::pair<PrecodingReport, PrecodingReport> evaluate_predictor(
    const CsiDataset& ds, const Predictor& predictor, Precoder precoder,
    std::size_t n_users, double sigma2, std::uint64_t seed,
    std::size_t n_draws) {
  if (ds.size() < n_users)
    throw domain_error("evaluate_predictor: dataset smaller than the user group");
  if (n_users == 0 || n_draws == 0)
    throw domain_error("evaluate_predictor: need at least one user and one draw");

  PrecodingReport pred_report, bound_report;
  pred_report.precoder = bound_report.precoder = precoder;
  pred_report.sigma2 = bound_report.sigma2 = sigma2;

  const std::size_t n_sub = ds.samples.front().h_dl.n_subcarriers();
  pred_report.sinr.zeros(n_users, n_sub);
  bound_report.sinr.zeros(n_users, n_sub);

  Rng rng(mix_seed(seed, 0xe7a1));
  for (std::size_t draw = 0; draw < n_draws; ++draw) {
    // user group without replacement
    std::vector<std::size_t> picks;
    while (picks.size() < n_users) {
      const std::size_t cand = rng.uniform_index(ds.size());
      bool dup = false;
      for (std::size_t p : picks) dup |= (p == cand);
      if (!dup) picks.push_back(cand);
    }

    std::vector<CsiMatrix> predicted;
    predicted.reserve(n_users);
    std::vector<const CsiMatrix*> truth_ptr, pred_ptr;
    for (std::size_t p : picks) {
      predicted.push_back(predictor(ds.samples[p]));
      truth_ptr.push_back(&ds.samples[p].h_dl);
    }
    for (const CsiMatrix& m : predicted) pred_ptr.push_back(&m);

    const MultiUserChannel h_true = stack_users(truth_ptr);
    const MultiUserChannel h_pred = stack_users(pred_ptr);

    auto weights_for = [&](const MultiUserChannel& h) {
      auto w = precoder == Precoder::mrt ? mrt_weights(h) : zf_weights(h);
      normalize_frobenius(w);
      return w;
    };

    const arma::mat sinr_pred =
        sinr_per_user(h_true, weights_for(h_pred), sigma2);
    const arma::mat sinr_bound =
        sinr_per_user(h_true, weights_for(h_true), sigma2);
    pred_report.sinr += sinr_pred;
    bound_report.sinr += sinr_bound;
    pred_report.sum_rate += sum_rate(sinr_pred);
    bound_report.sum_rate += sum_rate(sinr_bound);
  }

  const double scale = 1.0 / static_cast<double>(n_draws);
  pred_report.sinr *= scale;
  bound_report.sinr *= scale;
  pred_report.sum_rate *= scale;
  bound_report.sum_rate *= scale;
  return {std::move(pred_report), std::move(bound_report)};
}

}  // namespace fddpred
