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
#include <limits>
#include <vector>

#include "fddpred/dataset.hpp"
#include "fddpred/nn/network.hpp"

namespace fddpred::nn {

/// Mini-batch training setup. The batch size starts at initial_batch and
/// doubles at the milestone epochs (evenly spaced by default) until it
/// reaches final_batch; all sizes must be powers of two in [16, 512].
struct TrainConfig {
  std::uint32_t epochs = 100;
  double learning_rate = 1e-3;
  std::uint32_t initial_batch = 16;
  std::uint32_t final_batch = 512;
  std::vector<std::uint32_t> batch_doubling_epochs;  // optional explicit plan
  double train_snr_db = 10.0;  // +inf disables input noise
  double early_stop_nmse = 0.0;  // stop once epoch loss falls below (0 = off)
  std::uint64_t seed = 1;

  void validate() const;
  /// Effective batch size for an epoch index.
  std::uint32_t batch_for_epoch(std::uint32_t epoch) const;
};

struct TrainResult {
  std::vector<double> loss_history;        // mean batch NMSE per epoch
  std::vector<std::uint32_t> batch_sizes;  // batch size used per epoch
};

/// Adam mini-batch optimization of the NMSE loss on real-valued tensors
/// (columns = samples). Deterministic given config.seed. Throws
/// numerical_error and restores the last finite epoch's weights if the loss
/// diverges.
TrainResult train(NetworkModel& model, const arma::mat& inputs,
                  const arma::mat& labels, const TrainConfig& config);

/// Maps CSI matrices onto flat real network tensors: per antenna, a real and
/// an imaginary plane of n_sub entries with the used bins placed at their
/// grid positions (guards zero). grid_len = 1 collapses to the [re, im]
/// scalar layout.
struct CsiCodec {
  std::uint32_t grid_len = 1;
  std::uint32_t n_used = 1;
  std::uint32_t first_bin = 0;
  std::uint32_t n_antennas = 1;

  static CsiCodec for_band(const BandConfig& band, std::uint32_t n_antennas);
  Shape shape() const { return Shape{grid_len, 2 * n_antennas}; }
  arma::vec encode(const CsiMatrix& csi) const;
  CsiMatrix decode(const arma::vec& x) const;
};

/// A trained CSI regressor: the network plus the fixed input/output scaling
/// used while training.
struct CsiModel {
  NetworkModel net;
  CsiCodec codec;
  double in_scale = 1.0;   // applied to encoded inputs
  double out_scale = 1.0;  // applied to decoded outputs
};

/// Trains `model.net` on a dataset: encodes samples through the codec,
/// rescales to unit RMS, and adds fresh AWGN at config.train_snr_db to the
/// inputs at every presentation (labels stay clean).
TrainResult train_csi_model(CsiModel& model, const CsiDataset& train,
                            const TrainConfig& config);

/// Runs one uplink observation through the trained regressor.
CsiMatrix predict(const CsiModel& model, const CsiMatrix& h_ul);

inline constexpr double kNoInputNoise = std::numeric_limits<double>::infinity();

}  // namespace fddpred::nn
