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

#include "fddpred/nn/network.hpp"

#include <cmath>
#include <string>

#include "fddpred/errors.hpp"
#include "fddpred/rng.hpp"

namespace fddpred::nn {

LayerSpec LayerSpec::Dense(std::uint32_t units, Activation act) {
  LayerSpec s;
  s.kind = LayerKind::dense;
  s.activation = act;
  s.units = units;
  return s;
}

LayerSpec LayerSpec::Conv1d(std::uint32_t filters, std::uint32_t kernel,
                            Activation act) {
  LayerSpec s;
  s.kind = LayerKind::conv1d;
  s.activation = act;
  s.filters = filters;
  s.kernel = kernel;
  return s;
}

LayerSpec LayerSpec::AvgPool1d(std::uint32_t pool) {
  LayerSpec s;
  s.kind = LayerKind::avg_pool1d;
  s.pool = pool;
  return s;
}

LayerSpec LayerSpec::Flatten() {
  LayerSpec s;
  s.kind = LayerKind::flatten;
  return s;
}

LayerSpec LayerSpec::Reshape(Shape to) {
  LayerSpec s;
  s.kind = LayerKind::reshape;
  s.reshape_to = to;
  return s;
}

namespace {

Shape chain_shape(const LayerSpec& spec, const Shape& in, std::size_t index) {
  const std::string at = "layer " + std::to_string(index);
  switch (spec.kind) {
    case LayerKind::dense:
      if (spec.units == 0) throw domain_error(at + ": dense needs units > 0");
      return Shape{spec.units, 1};
    case LayerKind::conv1d:
      if (spec.filters == 0 || spec.kernel == 0)
        throw domain_error(at + ": conv1d needs filters and kernel > 0");
      return Shape{in.len, spec.filters};
    case LayerKind::avg_pool1d:
      if (spec.pool == 0 || in.len % spec.pool != 0)
        throw domain_error(at + ": pool size must divide the input length");
      return Shape{in.len / spec.pool, in.ch};
    case LayerKind::flatten:
      return Shape{in.size(), 1};
    case LayerKind::reshape:
      if (spec.reshape_to.size() != in.size())
        throw domain_error(at + ": reshape target size differs from input size");
      return spec.reshape_to;
  }
  throw domain_error(at + ": unknown layer kind");
}

LayerWeights allocate_weights(const LayerSpec& spec, const Shape& in) {
  LayerWeights w;
  switch (spec.kind) {
    case LayerKind::dense:
      w.W.zeros(spec.units, in.size());
      w.b.zeros(spec.units);
      break;
    case LayerKind::conv1d:
      w.W.zeros(spec.filters, spec.kernel * in.ch);
      w.b.zeros(spec.filters);
      break;
    default:
      break;
  }
  return w;
}

void apply_activation(Activation act, arma::mat& z) {
  if (act == Activation::relu) z.for_each([](double& v) { v = v > 0.0 ? v : 0.0; });
}

// 'same' padding for stride 1: total kernel-1, extra pad on the right
std::int64_t pad_left(std::uint32_t kernel) {
  return (static_cast<std::int64_t>(kernel) - 1) / 2;
}

// Gathers sliding windows of every sample into one (kernel*ch) x (len*batch)
// matrix so the convolution becomes a single GEMM.
arma::mat im2col(const arma::mat& x, const Shape& in, std::uint32_t kernel) {
  const std::int64_t len = in.len;
  const std::int64_t lpad = pad_left(kernel);
  const arma::uword batch = x.n_cols;
  arma::mat patches(static_cast<arma::uword>(kernel) * in.ch,
                    static_cast<arma::uword>(len) * batch, arma::fill::zeros);
  for (arma::uword j = 0; j < batch; ++j) {
    const double* col = x.colptr(j);
    for (std::uint32_t c = 0; c < in.ch; ++c) {
      const double* plane = col + static_cast<std::size_t>(c) * in.len;
      for (std::uint32_t t = 0; t < kernel; ++t) {
        const arma::uword row = c * kernel + t;
        for (std::int64_t p = 0; p < len; ++p) {
          const std::int64_t src = p + t - lpad;
          if (src < 0 || src >= len) continue;
          patches(row, j * static_cast<arma::uword>(len) +
                           static_cast<arma::uword>(p)) = plane[src];
        }
      }
    }
  }
  return patches;
}

// Scatters gradient patches back onto the input layout (adjoint of im2col).
arma::mat col2im(const arma::mat& dpatches, const Shape& in,
                 std::uint32_t kernel, arma::uword batch) {
  const std::int64_t len = in.len;
  const std::int64_t lpad = pad_left(kernel);
  arma::mat dx(in.size(), batch, arma::fill::zeros);
  for (arma::uword j = 0; j < batch; ++j) {
    double* col = dx.colptr(j);
    for (std::uint32_t c = 0; c < in.ch; ++c) {
      double* plane = col + static_cast<std::size_t>(c) * in.len;
      for (std::uint32_t t = 0; t < kernel; ++t) {
        const arma::uword row = c * kernel + t;
        for (std::int64_t p = 0; p < len; ++p) {
          const std::int64_t dst = p + t - lpad;
          if (dst < 0 || dst >= len) continue;
          plane[dst] += dpatches(row, j * static_cast<arma::uword>(len) +
                                          static_cast<arma::uword>(p));
        }
      }
    }
  }
  return dx;
}

// conv output is stored filter-plane major: out[(f * len) + p]
arma::mat conv_forward(const arma::mat& x, const Shape& in,
                       const LayerSpec& spec, const LayerWeights& w) {
  const arma::uword batch = x.n_cols;
  const arma::uword len = in.len;
  const arma::mat patches = im2col(x, in, spec.kernel);
  const arma::mat z = w.W * patches;  // filters x (len*batch)
  arma::mat out(static_cast<arma::uword>(spec.filters) * len, batch);
  for (arma::uword j = 0; j < batch; ++j)
    for (std::uint32_t f = 0; f < spec.filters; ++f)
      for (arma::uword p = 0; p < len; ++p)
        out(f * len + p, j) = z(f, j * len + p) + w.b(f);
  return out;
}

arma::mat pool_forward(const arma::mat& x, const Shape& in,
                       std::uint32_t pool) {
  const arma::uword batch = x.n_cols;
  const arma::uword out_len = in.len / pool;
  arma::mat out(out_len * in.ch, batch);
  const double inv = 1.0 / static_cast<double>(pool);
  for (arma::uword j = 0; j < batch; ++j) {
    const double* src = x.colptr(j);
    double* dst = out.colptr(j);
    for (std::uint32_t c = 0; c < in.ch; ++c)
      for (arma::uword q = 0; q < out_len; ++q) {
        double acc = 0.0;
        for (std::uint32_t t = 0; t < pool; ++t)
          acc += src[c * in.len + q * pool + t];
        dst[c * out_len + q] = acc * inv;
      }
  }
  return out;
}

arma::mat pool_backward(const arma::mat& dy, const Shape& in,
                        std::uint32_t pool) {
  const arma::uword batch = dy.n_cols;
  const arma::uword out_len = in.len / pool;
  arma::mat dx(in.size(), batch, arma::fill::zeros);
  const double inv = 1.0 / static_cast<double>(pool);
  for (arma::uword j = 0; j < batch; ++j) {
    const double* src = dy.colptr(j);
    double* dst = dx.colptr(j);
    for (std::uint32_t c = 0; c < in.ch; ++c)
      for (arma::uword q = 0; q < out_len; ++q) {
        const double g = src[c * out_len + q] * inv;
        for (std::uint32_t t = 0; t < pool; ++t)
          dst[c * in.len + q * pool + t] += g;
      }
  }
  return dx;
}

}  // namespace

NetworkModel make_network(Shape input, std::vector<LayerSpec> layers) {
  if (input.size() == 0)
    throw domain_error("make_network: input shape must be non-empty");
  NetworkModel model;
  model.input_shape = input;
  model.layers = std::move(layers);
  model.shapes.reserve(model.layers.size());
  model.weights.reserve(model.layers.size());

  Shape cur = input;
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    model.weights.push_back(allocate_weights(model.layers[i], cur));
    cur = chain_shape(model.layers[i], cur, i);
    model.shapes.push_back(cur);
  }
  return model;
}

std::size_t NetworkModel::layer_parameter_count(std::size_t layer) const {
  return weights.at(layer).W.n_elem + weights.at(layer).b.n_elem;
}

std::size_t NetworkModel::total_parameter_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    n += layer_parameter_count(i);
  return n;
}

void init_weights(NetworkModel& model, std::uint64_t seed) {
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    LayerWeights& w = model.weights[i];
    if (w.W.n_elem == 0) continue;
    const double fan_in = static_cast<double>(w.W.n_cols);
    const double limit = std::sqrt(6.0 / fan_in);
    Rng rng(mix_seed(seed, i));
    for (arma::uword e = 0; e < w.W.n_elem; ++e)
      w.W(e) = rng.uniform(-limit, limit);
    w.b.zeros();
  }
}

NetworkModel build_los_net() {
  const Activation relu = Activation::relu;
  return make_network(Shape{1, 2},
                      {LayerSpec::Dense(128, relu), LayerSpec::Dense(256, relu),
                       LayerSpec::Dense(1024, relu), LayerSpec::Dense(256, relu),
                       LayerSpec::Dense(128, relu),
                       LayerSpec::Dense(2, Activation::linear)});
}

NetworkModel build_siso_net() {
  const Activation relu = Activation::relu;
  return make_network(
      Shape{1024, 2},
      {LayerSpec::Conv1d(32, 6, relu), LayerSpec::AvgPool1d(4),
       LayerSpec::Conv1d(16, 6, relu), LayerSpec::AvgPool1d(4),
       LayerSpec::Flatten(), LayerSpec::Dense(128, relu),
       LayerSpec::Dense(128, relu), LayerSpec::Dense(128, relu),
       LayerSpec::Dense(2048, Activation::linear),
       LayerSpec::Reshape(Shape{1024, 2})});
}

NetworkModel build_mimo_net(std::uint32_t m) {
  if (m == 0) throw domain_error("build_mimo_net: need at least one antenna");
  const Activation relu = Activation::relu;
  return make_network(
      Shape{1024, 2 * m},
      {LayerSpec::Conv1d(32, 6, relu), LayerSpec::AvgPool1d(4),
       LayerSpec::Conv1d(16, 6, relu), LayerSpec::AvgPool1d(4),
       LayerSpec::Flatten(), LayerSpec::Dense(16, relu),
       LayerSpec::Dense(32, relu), LayerSpec::Dense(64, relu),
       LayerSpec::Dense(m * 2048, Activation::linear),
       LayerSpec::Reshape(Shape{1024, 2 * m})});
}

arma::mat forward(const NetworkModel& model, const arma::mat& X) {
  if (X.n_rows != model.input_shape.size())
    throw domain_error("forward: input size " + std::to_string(X.n_rows) +
                       " does not match the model input " +
                       std::to_string(model.input_shape.size()));
  arma::mat cur = X;
  Shape shape = model.input_shape;
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    const LayerSpec& spec = model.layers[i];
    const LayerWeights& w = model.weights[i];
    switch (spec.kind) {
      case LayerKind::dense:
        cur = w.W * cur;
        cur.each_col() += w.b;
        break;
      case LayerKind::conv1d:
        cur = conv_forward(cur, shape, spec, w);
        break;
      case LayerKind::avg_pool1d:
        cur = pool_forward(cur, shape, spec.pool);
        break;
      case LayerKind::flatten:
      case LayerKind::reshape:
        break;  // layout change only
    }
    apply_activation(spec.activation, cur);
    shape = model.shapes[i];
  }
  return cur;
}

arma::vec forward(const NetworkModel& model, const arma::vec& x) {
  return arma::vec(forward(model, arma::mat(x)));
}

double nmse_loss(const arma::mat& pred, const arma::mat& labels) {
  if (pred.n_rows != labels.n_rows || pred.n_cols != labels.n_cols)
    throw domain_error("nmse_loss: shape mismatch");
  if (pred.n_cols == 0) throw domain_error("nmse_loss: empty batch");
  double acc = 0.0;
  for (arma::uword j = 0; j < pred.n_cols; ++j) {
    const double energy = arma::dot(labels.col(j), labels.col(j));
    if (energy == 0.0) throw domain_error("nmse_loss: all-zero label");
    const arma::vec diff = pred.col(j) - labels.col(j);
    acc += arma::dot(diff, diff) / energy;
  }
  return acc / static_cast<double>(pred.n_cols);
}

Gradients gradients(const NetworkModel& model, const arma::mat& X,
                    const arma::mat& Y, double loss_scale) {
  if (X.n_cols == 0) throw domain_error("gradients: empty batch");
  if (X.n_rows != model.input_shape.size())
    throw domain_error("gradients: input size mismatch");
  if (Y.n_rows != model.output_shape().size() || Y.n_cols != X.n_cols)
    throw domain_error("gradients: label size mismatch");

  const std::size_t n_layers = model.layers.size();
  std::vector<arma::mat> inputs(n_layers);   // activation entering each layer
  std::vector<arma::mat> pre_act(n_layers);  // output before the nonlinearity

  arma::mat cur = X;
  Shape shape = model.input_shape;
  for (std::size_t i = 0; i < n_layers; ++i) {
    const LayerSpec& spec = model.layers[i];
    const LayerWeights& w = model.weights[i];
    inputs[i] = cur;
    switch (spec.kind) {
      case LayerKind::dense:
        cur = w.W * cur;
        cur.each_col() += w.b;
        break;
      case LayerKind::conv1d:
        cur = conv_forward(cur, shape, spec, w);
        break;
      case LayerKind::avg_pool1d:
        cur = pool_forward(cur, shape, spec.pool);
        break;
      case LayerKind::flatten:
      case LayerKind::reshape:
        break;
    }
    pre_act[i] = cur;
    apply_activation(spec.activation, cur);
    shape = model.shapes[i];
  }

  Gradients grads;
  grads.loss = loss_scale * nmse_loss(cur, Y);
  grads.dW.resize(n_layers);
  grads.db.resize(n_layers);

  // d(mean NMSE)/d pred = 2 (pred - y) / (batch * ||y||^2), per column
  arma::mat delta = cur - Y;
  for (arma::uword j = 0; j < delta.n_cols; ++j) {
    const double energy = arma::dot(Y.col(j), Y.col(j));
    delta.col(j) *= 2.0 * loss_scale /
                    (static_cast<double>(X.n_cols) * energy);
  }

  for (std::size_t idx = n_layers; idx-- > 0;) {
    const LayerSpec& spec = model.layers[idx];
    const LayerWeights& w = model.weights[idx];
    const Shape in_shape = idx == 0 ? model.input_shape : model.shapes[idx - 1];

    if (spec.activation == Activation::relu)
      delta %= arma::conv_to<arma::mat>::from(pre_act[idx] > 0.0);

    switch (spec.kind) {
      case LayerKind::dense:
        grads.dW[idx] = delta * inputs[idx].t();
        grads.db[idx] = arma::sum(delta, 1);
        delta = w.W.t() * delta;
        break;
      case LayerKind::conv1d: {
        const arma::uword batch = delta.n_cols;
        const arma::uword len = in_shape.len;
        // reshape delta (filters*len x batch) to (filters x len*batch)
        arma::mat dz(spec.filters, len * batch);
        for (arma::uword j = 0; j < batch; ++j)
          for (std::uint32_t f = 0; f < spec.filters; ++f)
            for (arma::uword p = 0; p < len; ++p)
              dz(f, j * len + p) = delta(f * len + p, j);
        const arma::mat patches = im2col(inputs[idx], in_shape, spec.kernel);
        grads.dW[idx] = dz * patches.t();
        grads.db[idx] = arma::sum(dz, 1);
        delta = col2im(w.W.t() * dz, in_shape, spec.kernel, batch);
        break;
      }
      case LayerKind::avg_pool1d:
        grads.dW[idx].reset();
        grads.db[idx].reset();
        delta = pool_backward(delta, in_shape, spec.pool);
        break;
      case LayerKind::flatten:
      case LayerKind::reshape:
        grads.dW[idx].reset();
        grads.db[idx].reset();
        break;
    }
  }
  return grads;
}

}  // namespace fddpred::nn
