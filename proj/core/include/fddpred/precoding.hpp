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
#include <functional>
#include <utility>
#include <vector>

#include "fddpred/dataset.hpp"

namespace fddpred {

/// Multi-user downlink channel: one N_users x M matrix per used subcarrier.
struct MultiUserChannel {
  std::vector<arma::cx_mat> h;  // h[k](u, m)

  std::size_t n_subcarriers() const { return h.size(); }
  std::size_t n_users() const { return h.empty() ? 0 : h.front().n_rows; }
  std::size_t n_antennas() const { return h.empty() ? 0 : h.front().n_cols; }
};

/// Stacks per-user CSI matrices (each M x n_used) into per-subcarrier
/// channel matrices.
MultiUserChannel stack_users(const std::vector<const CsiMatrix*>& users);

/// Maximum ratio transmission: W_k = H_k^H.
std::vector<arma::cx_mat> mrt_weights(const MultiUserChannel& h_hat);

/// Zero forcing: W_k = H_k^H (H_k H_k^H)^{-1}. Throws numerical_error
/// listing the offending subcarriers if any H_k H_k^H is singular, and
/// domain_error if n_users > M.
std::vector<arma::cx_mat> zf_weights(const MultiUserChannel& h_hat);

/// Scales every W_k to unit Frobenius norm (per-subcarrier total power
/// constraint of the received-signal model y = H W / ||W||_F x + n).
void normalize_frobenius(std::vector<arma::cx_mat>& w);

/// Per-user, per-subcarrier SINR of Frobenius-normalized weights against the
/// true channel: |h_{k,u} w_{k,u}|^2 / (sum_{j != u} |h_{k,u} w_{k,j}|^2 +
/// sigma2). Result is n_users x n_subcarriers.
arma::mat sinr_per_user(const MultiUserChannel& h_true,
                        const std::vector<arma::cx_mat>& w_normalized,
                        double sigma2);

/// Effective sum-rate: mean over used subcarriers of sum_u log2(1 + SINR).
double sum_rate(const arma::mat& sinr);

enum class Precoder { mrt, zf };

struct PrecodingReport {
  arma::mat sinr;          // n_users x n_subcarriers, averaged over draws
  double sum_rate = 0.0;   // bits/s/Hz, averaged over draws
  Precoder precoder = Precoder::mrt;
  double sigma2 = 0.0;
};

/// Predicts downlink CSI for one sample. Oracle predictors used in tests may
/// read the label; production predictors must only look at h_ul.
using Predictor = std::function<CsiMatrix(const CsiSample&)>;

/// Draws user groups (without replacement) from the dataset, precodes on the
/// predicted CSI, scores on the true CSI, and repeats with the true CSI as
/// the reciprocity upper bound. Returns {predicted, bound}.
std::pair<PrecodingReport, PrecodingReport> evaluate_predictor(
    const CsiDataset& ds, const Predictor& predictor, Precoder precoder,
    std::size_t n_users, double sigma2, std::uint64_t seed,
    std::size_t n_draws = 50);

}  // namespace fddpred
