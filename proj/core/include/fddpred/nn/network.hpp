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
#include <vector>

namespace fddpred::nn {

enum class LayerKind : std::uint32_t {
  dense = 0,
  conv1d = 1,
  avg_pool1d = 2,
  flatten = 3,
  reshape = 4,
};

enum class Activation : std::uint32_t {
  linear = 0,
  relu = 1,
};

/// Tensor shape as (length, channels); dense vectors are (size, 1).
struct Shape {
  std::uint32_t len = 0;
  std::uint32_t ch = 1;

  std::uint32_t size() const { return len * ch; }
  bool operator==(const Shape&) const = default;
};

/// One layer of the stack. Convolutions are 1-D with same-length padding
/// and stride 1; pooling uses non-overlapping windows.
struct LayerSpec {
  LayerKind kind = LayerKind::dense;
  Activation activation = Activation::linear;
  std::uint32_t units = 0;    // dense
  std::uint32_t filters = 0;  // conv1d
  std::uint32_t kernel = 0;   // conv1d
  std::uint32_t pool = 0;     // avg_pool1d
  Shape reshape_to{};         // reshape

  static LayerSpec Dense(std::uint32_t units, Activation act);
  static LayerSpec Conv1d(std::uint32_t filters, std::uint32_t kernel,
                          Activation act);
  static LayerSpec AvgPool1d(std::uint32_t pool);
  static LayerSpec Flatten();
  static LayerSpec Reshape(Shape to);
};

/// Weights of one trainable layer. Dense: W is units x in_size. Conv1d: W is
/// filters x (kernel * in_ch), column (c * kernel + t) multiplying channel c
/// at kernel offset t. Stateless layers keep empty tensors.
struct LayerWeights {
  arma::mat W;
  arma::vec b;
};

/// An ordered layer stack with its weights. Samples are flattened in
/// channel-plane order: entry (c * len + p) holds channel c at position p.
struct NetworkModel {
  Shape input_shape{};
  std::vector<LayerSpec> layers;
  std::vector<LayerWeights> weights;
  std::vector<Shape> shapes;  // output shape per layer

  Shape output_shape() const {
    return shapes.empty() ? input_shape : shapes.back();
  }
  std::size_t layer_parameter_count(std::size_t layer) const;
  std::size_t total_parameter_count() const;
};

/// Chains shapes, validates dimensions and allocates zeroed weights.
NetworkModel make_network(Shape input, std::vector<LayerSpec> layers);

/// Fan-in-scaled uniform weight init, zero biases. Deterministic by seed.
void init_weights(NetworkModel& model, std::uint64_t seed);

/// Dense stack for the scalar line-of-sight task: 2-128-256-1024-256-128-2,
/// ReLU hidden layers, linear output.
NetworkModel build_los_net();

/// Conv stack for the 1024-subcarrier SISO task: conv1d(32,k6) - pool(4) -
/// conv1d(16,k6) - pool(4) - flatten - dense 128/128/128 - dense 2048 -
/// reshape 1024x2.
NetworkModel build_siso_net();

/// SISO trunk with per-antenna-stacked input channels (2M), dense widths
/// 16/32/64 and a final dense of M*2048 reshaped to 1024 x 2M.
NetworkModel build_mimo_net(std::uint32_t m);

/// Batch forward pass; each column of X is one flattened sample.
arma::mat forward(const NetworkModel& model, const arma::mat& X);
arma::vec forward(const NetworkModel& model, const arma::vec& x);

/// Mean per-sample NMSE over batch columns: mean_j ||y_j - p_j||^2 / ||y_j||^2.
double nmse_loss(const arma::mat& pred, const arma::mat& labels);

struct Gradients {
  std::vector<arma::mat> dW;  // per layer, zero-sized for stateless layers
  std::vector<arma::vec> db;
  double loss = 0.0;
};

/// Exact gradients of loss_scale * mean-batch NMSE with respect to every
/// weight and bias tensor.
Gradients gradients(const NetworkModel& model, const arma::mat& X,
                    const arma::mat& Y, double loss_scale = 1.0);

}  // namespace fddpred::nn
