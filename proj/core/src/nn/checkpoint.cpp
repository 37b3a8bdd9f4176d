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

#include "fddpred/nn/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "fddpred/errors.hpp"
#include "../io_util.hpp"

namespace fddpred::nn {

namespace {
constexpr std::uint32_t kCheckpointVersion = 1;
}

void save_checkpoint(const CsiModel& model, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw parse_error(parse_fault::bad_value,
                      "save_checkpoint: cannot open " + path.string());

  os.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  io::write_u32(os, kCheckpointVersion);
  io::write_u32(os, model.net.input_shape.len);
  io::write_u32(os, model.net.input_shape.ch);
  io::write_u32(os, static_cast<std::uint32_t>(model.net.layers.size()));
  io::write_u32(os, model.codec.grid_len);
  io::write_u32(os, model.codec.n_used);
  io::write_u32(os, model.codec.n_antennas);
  io::write_f64(os, model.in_scale);
  io::write_f64(os, model.out_scale);

  for (const LayerSpec& spec : model.net.layers) {
    io::write_u32(os, static_cast<std::uint32_t>(spec.kind));
    io::write_u32(os, static_cast<std::uint32_t>(spec.activation));
    switch (spec.kind) {
      case LayerKind::dense:
        io::write_u32(os, spec.units);
        io::write_u32(os, 0);
        break;
      case LayerKind::conv1d:
        io::write_u32(os, spec.filters);
        io::write_u32(os, spec.kernel);
        break;
      case LayerKind::avg_pool1d:
        io::write_u32(os, spec.pool);
        io::write_u32(os, 0);
        break;
      case LayerKind::flatten:
        io::write_u32(os, 0);
        io::write_u32(os, 0);
        break;
      case LayerKind::reshape:
        io::write_u32(os, spec.reshape_to.len);
        io::write_u32(os, spec.reshape_to.ch);
        break;
    }
  }

  for (const LayerWeights& w : model.net.weights) {
    // row-major so the on-disk order follows (out, in) indexing
    for (arma::uword r = 0; r < w.W.n_rows; ++r)
      for (arma::uword c = 0; c < w.W.n_cols; ++c)
        io::write_f32(os, static_cast<float>(w.W(r, c)));
    for (arma::uword i = 0; i < w.b.n_elem; ++i)
      io::write_f32(os, static_cast<float>(w.b(i)));
  }
  if (!os)
    throw parse_error(parse_fault::bad_value,
                      "save_checkpoint: write failed for " + path.string());
}

CsiModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw parse_error(parse_fault::bad_value,
                      "load_checkpoint: cannot open " + path.string());

  char magic[sizeof(kCheckpointMagic)] = {};
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0)
    throw parse_error(parse_fault::bad_magic,
                      "load_checkpoint: not an FDDNN001 file: " + path.string());

  const std::uint32_t version = io::read_u32(is, "checkpoint version");
  if (version != kCheckpointVersion)
    throw parse_error(parse_fault::bad_value,
                      "load_checkpoint: unsupported version " +
                          std::to_string(version));

  Shape input{io::read_u32(is, "input length"), io::read_u32(is, "input channels")};
  const std::uint32_t n_layers = io::read_u32(is, "layer count");

  CsiModel model;
  model.codec.grid_len = io::read_u32(is, "codec grid");
  model.codec.n_used = io::read_u32(is, "codec n_used");
  model.codec.n_antennas = io::read_u32(is, "codec antennas");
  if (model.codec.grid_len < model.codec.n_used || model.codec.n_used == 0)
    throw parse_error(parse_fault::dimension_mismatch,
                      "load_checkpoint: inconsistent codec grid");
  model.codec.first_bin = (model.codec.grid_len - model.codec.n_used + 1) / 2;
  model.in_scale = io::read_f64(is, "input scale");
  model.out_scale = io::read_f64(is, "output scale");

  std::vector<LayerSpec> specs;
  specs.reserve(n_layers);
  for (std::uint32_t i = 0; i < n_layers; ++i) {
    const std::uint32_t kind = io::read_u32(is, "layer kind");
    const std::uint32_t act = io::read_u32(is, "layer activation");
    const std::uint32_t p0 = io::read_u32(is, "layer parameter");
    const std::uint32_t p1 = io::read_u32(is, "layer parameter");
    if (kind > static_cast<std::uint32_t>(LayerKind::reshape) ||
        act > static_cast<std::uint32_t>(Activation::relu))
      throw parse_error(parse_fault::bad_value,
                        "load_checkpoint: unknown layer kind or activation");
    LayerSpec spec;
    spec.kind = static_cast<LayerKind>(kind);
    spec.activation = static_cast<Activation>(act);
    switch (spec.kind) {
      case LayerKind::dense: spec.units = p0; break;
      case LayerKind::conv1d: spec.filters = p0; spec.kernel = p1; break;
      case LayerKind::avg_pool1d: spec.pool = p0; break;
      case LayerKind::flatten: break;
      case LayerKind::reshape: spec.reshape_to = Shape{p0, p1}; break;
    }
    specs.push_back(spec);
  }

  try {
    model.net = make_network(input, std::move(specs));
  } catch (const domain_error& e) {
    throw parse_error(parse_fault::dimension_mismatch,
                      std::string("load_checkpoint: invalid layer table: ") +
                          e.what());
  }
  if (model.codec.shape() != model.net.input_shape)
    throw parse_error(parse_fault::dimension_mismatch,
                      "load_checkpoint: codec does not match the input shape");

  for (LayerWeights& w : model.net.weights) {
    for (arma::uword r = 0; r < w.W.n_rows; ++r)
      for (arma::uword c = 0; c < w.W.n_cols; ++c)
        w.W(r, c) = io::read_f32(is, "weight tensor");
    for (arma::uword i = 0; i < w.b.n_elem; ++i)
      w.b(i) = io::read_f32(is, "bias tensor");
  }
  return model;
}

}  // namespace fddpred::nn
