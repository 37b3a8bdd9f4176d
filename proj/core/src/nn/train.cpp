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

#include "fddpred/nn/train.hpp"

#include <dlfcn.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "fddpred/errors.hpp"
#include "fddpred/parallel.hpp"
#include "fddpred/rng.hpp"

namespace fddpred::nn {

namespace {

constexpr std::uint64_t kShuffleStream = 0x51afull;
constexpr std::uint64_t kNoiseStream = 0xa3571ull;

// The mini-batch GEMMs are skinny; multi-threaded OpenBLAS loses more to
// synchronization than it gains. Pin BLAS to one thread for the duration of
// a training run (no-op when BLAS is not OpenBLAS).
class BlasThreadGuard {
 public:
  BlasThreadGuard() {
    set_ = reinterpret_cast<void (*)(int)>(
        dlsym(RTLD_DEFAULT, "openblas_set_num_threads"));
    if (set_) set_(1);
  }
  ~BlasThreadGuard() {
    if (set_) set_(static_cast<int>(worker_count()));
  }
  BlasThreadGuard(const BlasThreadGuard&) = delete;
  BlasThreadGuard& operator=(const BlasThreadGuard&) = delete;

 private:
  void (*set_)(int) = nullptr;
};

bool is_pow2(std::uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

struct AdamState {
  std::vector<arma::mat> mW, vW;
  std::vector<arma::vec> mb, vb;
  std::uint64_t step = 0;

  explicit AdamState(const NetworkModel& model) {
    for (const LayerWeights& w : model.weights) {
      mW.emplace_back(arma::size(w.W), arma::fill::zeros);
      vW.emplace_back(arma::size(w.W), arma::fill::zeros);
      mb.emplace_back(arma::size(w.b), arma::fill::zeros);
      vb.emplace_back(arma::size(w.b), arma::fill::zeros);
    }
  }

  void apply(NetworkModel& model, const Gradients& g, double lr) {
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    ++step;
    const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
    const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
    for (std::size_t i = 0; i < model.weights.size(); ++i) {
      if (g.dW[i].n_elem == 0) continue;
      mW[i] = beta1 * mW[i] + (1.0 - beta1) * g.dW[i];
      vW[i] = beta2 * vW[i] + (1.0 - beta2) * arma::square(g.dW[i]);
      model.weights[i].W -= lr * (mW[i] / c1) / (arma::sqrt(vW[i] / c2) + eps);
      mb[i] = beta1 * mb[i] + (1.0 - beta1) * g.db[i];
      vb[i] = beta2 * vb[i] + (1.0 - beta2) * arma::square(g.db[i]);
      model.weights[i].b -= lr * (mb[i] / c1) / (arma::sqrt(vb[i] / c2) + eps);
    }
  }
};

// Mini-batch loop shared by the raw and the dataset-level entry points.
// inputs_for_epoch supplies the (possibly re-noised) input tensor per epoch.
TrainResult run_epochs(
    NetworkModel& model, const arma::mat& labels, const TrainConfig& config,
    const std::function<const arma::mat&(std::uint32_t)>& inputs_for_epoch) {
  const std::size_t n = labels.n_cols;
  const BlasThreadGuard blas_guard;
  AdamState adam(model);
  TrainResult result;
  result.loss_history.reserve(config.epochs);
  result.batch_sizes.reserve(config.epochs);

  std::vector<arma::uword> order(n);
  std::iota(order.begin(), order.end(), arma::uword{0});
  std::vector<LayerWeights> last_good = model.weights;

  for (std::uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
    const arma::mat& inputs = inputs_for_epoch(epoch);

    Rng shuffle_rng(mix_seed(config.seed, kShuffleStream + epoch));
    for (std::size_t i = n; i > 1; --i)
      std::swap(order[i - 1], order[shuffle_rng.uniform_index(i)]);

    const std::uint32_t batch = config.batch_for_epoch(epoch);
    double epoch_loss = 0.0;
    std::size_t n_batches = 0;

    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t stop = std::min(n, start + batch);
      const arma::uvec idx(
          std::vector<arma::uword>(order.begin() + start, order.begin() + stop));
      const Gradients g = gradients(model, inputs.cols(idx), labels.cols(idx));
      if (!std::isfinite(g.loss)) {
        model.weights = last_good;
        throw numerical_error("train: loss diverged at epoch " +
                              std::to_string(epoch) +
                              "; weights restored to the last finite epoch");
      }
      adam.apply(model, g, config.learning_rate);
      epoch_loss += g.loss;
      ++n_batches;
    }

    epoch_loss /= static_cast<double>(n_batches);
    result.loss_history.push_back(epoch_loss);
    result.batch_sizes.push_back(batch);
    last_good = model.weights;
    if (config.early_stop_nmse > 0.0 && epoch_loss < config.early_stop_nmse)
      break;
  }
  return result;
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs == 0) throw domain_error("TrainConfig: need at least one epoch");
  if (!(learning_rate > 0.0))
    throw domain_error("TrainConfig: learning rate must be positive");
  if (!is_pow2(initial_batch) || !is_pow2(final_batch) || initial_batch < 16 ||
      final_batch > 512 || initial_batch > final_batch)
    throw domain_error(
        "TrainConfig: batch sizes must be powers of two within [16, 512]");
  for (std::uint32_t e : batch_doubling_epochs)
    if (e >= epochs)
      throw domain_error("TrainConfig: doubling milestone past the last epoch");
}

std::uint32_t TrainConfig::batch_for_epoch(std::uint32_t epoch) const {
  std::uint32_t doublings = 0;
  if (!batch_doubling_epochs.empty()) {
    for (std::uint32_t e : batch_doubling_epochs)
      if (epoch >= e) ++doublings;
  } else {
    // evenly spaced milestones across the epoch budget
    std::uint32_t stages = 1;
    for (std::uint32_t b = initial_batch; b < final_batch; b *= 2) ++stages;
    const std::uint32_t span = std::max(1u, epochs / stages);
    doublings = epoch / span;
  }
  std::uint32_t batch = initial_batch;
  for (std::uint32_t i = 0; i < doublings && batch < final_batch; ++i)
    batch *= 2;
  return std::min(batch, final_batch);
}

TrainResult train(NetworkModel& model, const arma::mat& inputs,
                  const arma::mat& labels, const TrainConfig& config) {
  config.validate();
  if (inputs.n_cols == 0) throw domain_error("train: empty training set");
  if (inputs.n_cols != labels.n_cols)
    throw domain_error("train: inputs/labels sample count mismatch");
  return run_epochs(model, labels, config,
                    [&](std::uint32_t) -> const arma::mat& { return inputs; });
}

CsiCodec CsiCodec::for_band(const BandConfig& band, std::uint32_t n_antennas) {
  CsiCodec c;
  c.grid_len = band.n_sub;
  c.n_used = band.n_used;
  c.first_bin = band.first_used_bin();
  c.n_antennas = n_antennas;
  return c;
}

arma::vec CsiCodec::encode(const CsiMatrix& csi) const {
  if (csi.n_antennas() != n_antennas || csi.n_subcarriers() != n_used)
    throw domain_error("CsiCodec: CSI dimensions do not match the codec");
  arma::vec x(shape().size(), arma::fill::zeros);
  for (std::uint32_t a = 0; a < n_antennas; ++a) {
    const std::size_t re0 = static_cast<std::size_t>(2 * a) * grid_len;
    const std::size_t im0 = re0 + grid_len;
    for (std::uint32_t k = 0; k < n_used; ++k) {
      const std::complex<double> v = csi.values(a, k);
      x(re0 + first_bin + k) = v.real();
      x(im0 + first_bin + k) = v.imag();
    }
  }
  return x;
}

CsiMatrix CsiCodec::decode(const arma::vec& x) const {
  if (x.n_elem != shape().size())
    throw domain_error("CsiCodec: tensor size does not match the codec");
  CsiMatrix csi;
  csi.values.set_size(n_antennas, n_used);
  for (std::uint32_t a = 0; a < n_antennas; ++a) {
    const std::size_t re0 = static_cast<std::size_t>(2 * a) * grid_len;
    const std::size_t im0 = re0 + grid_len;
    for (std::uint32_t k = 0; k < n_used; ++k)
      csi.values(a, k) = {x(re0 + first_bin + k), x(im0 + first_bin + k)};
  }
  return csi;
}

TrainResult train_csi_model(CsiModel& model, const CsiDataset& train_set,
                            const TrainConfig& config) {
  config.validate();
  if (train_set.samples.empty())
    throw domain_error("train_csi_model: empty training set");
  if (model.codec.shape() != model.net.input_shape)
    throw domain_error(
        "train_csi_model: codec shape does not match the network input");

  const std::size_t n = train_set.size();
  arma::mat clean(model.net.input_shape.size(), n);
  arma::mat labels(model.net.output_shape().size(), n);
  for (std::size_t i = 0; i < n; ++i) {
    clean.col(i) = model.codec.encode(train_set.samples[i].h_ul);
    labels.col(i) = model.codec.encode(train_set.samples[i].h_dl);
  }

  // fixed unit-RMS scaling derived from the training set
  const double in_rms =
      std::sqrt(arma::accu(arma::square(clean)) / static_cast<double>(n));
  const double out_rms =
      std::sqrt(arma::accu(arma::square(labels)) / static_cast<double>(n));
  if (!(in_rms > 0.0) || !(out_rms > 0.0))
    throw domain_error("train_csi_model: degenerate (all-zero) training data");
  model.in_scale = 1.0 / in_rms;
  model.out_scale = out_rms;
  labels /= out_rms;

  if (std::isinf(config.train_snr_db)) {
    const arma::mat scaled = clean * model.in_scale;
    return run_epochs(model.net, labels, config,
                      [&](std::uint32_t) -> const arma::mat& { return scaled; });
  }

  // fresh input AWGN at every presentation; labels stay clean
  arma::mat noisy;
  auto renoise = [&](std::uint32_t epoch) -> const arma::mat& {
    noisy = clean;
    Rng noise_rng(mix_seed(config.seed, kNoiseStream + epoch));
    for (std::size_t i = 0; i < n; ++i) {
      const CsiMatrix h = model.codec.decode(noisy.col(i));
      noisy.col(i) =
          model.codec.encode(add_awgn(h, config.train_snr_db, noise_rng.raw()));
    }
    noisy *= model.in_scale;
    return noisy;
  };
  return run_epochs(model.net, labels, config, renoise);
}

CsiMatrix predict(const CsiModel& model, const CsiMatrix& h_ul) {
  const arma::vec x = model.codec.encode(h_ul) * model.in_scale;
  const arma::vec y = forward(model.net, x) * model.out_scale;
  return model.codec.decode(y);
}

}  // namespace fddpred::nn
