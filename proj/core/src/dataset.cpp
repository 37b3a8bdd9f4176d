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

#include "fddpred/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "fddpred/errors.hpp"
#include "fddpred/parallel.hpp"
#include "fddpred/rng.hpp"
#include "io_util.hpp"

namespace fddpred {

namespace {

constexpr std::uint32_t kFormatVersion = 1;
constexpr double kUeHeightM = 1.5;

void write_band(std::ostream& os, const BandConfig& b) {
  io::write_f64(os, b.center_freq_hz);
  io::write_f64(os, b.bandwidth_hz);
  io::write_u32(os, b.n_sub);
  io::write_u32(os, b.n_used);
  io::write_u32(os, b.cp_len);
}

BandConfig read_band(std::istream& is) {
  BandConfig b;
  b.center_freq_hz = io::read_f64(is, "band center frequency");
  b.bandwidth_hz = io::read_f64(is, "band bandwidth");
  b.n_sub = io::read_u32(is, "band n_sub");
  b.n_used = io::read_u32(is, "band n_used");
  b.cp_len = io::read_u32(is, "band cp_len");
  return b;
}

void write_matrix_f32(std::ostream& os, const arma::cx_mat& m) {
  for (arma::uword row = 0; row < m.n_rows; ++row)
    for (arma::uword col = 0; col < m.n_cols; ++col) {
      io::write_f32(os, static_cast<float>(m(row, col).real()));
      io::write_f32(os, static_cast<float>(m(row, col).imag()));
    }
}

arma::cx_mat read_matrix_f32(std::istream& is, arma::uword rows,
                             arma::uword cols) {
  arma::cx_mat m(rows, cols);
  for (arma::uword row = 0; row < rows; ++row)
    for (arma::uword col = 0; col < cols; ++col) {
      const double re = io::read_f32(is, "CSI payload");
      const double im = io::read_f32(is, "CSI payload");
      m(row, col) = {re, im};
    }
  return m;
}

BandConfig scalar_band(double center_freq_hz) {
  BandConfig b;
  b.center_freq_hz = center_freq_hz;
  b.bandwidth_hz = 20e6;
  b.n_sub = 1;
  b.n_used = 1;
  b.cp_len = 0;
  return b;
}

}  // namespace

CsiDataset generate_los_scalar_dataset(std::size_t n, double radius_min_m,
                                       double radius_max_m, double f_ul_hz,
                                       double f_dl_hz, double beta,
                                       std::uint64_t seed) {
  if (!(radius_min_m > 0.0) || !(radius_min_m < radius_max_m))
    throw domain_error("generate_los_scalar_dataset: need 0 < radius_min < radius_max");
  if (!(f_ul_hz > 0.0) || !(f_dl_hz > 0.0))
    throw domain_error("generate_los_scalar_dataset: carrier frequencies must be positive");

  CsiDataset ds;
  ds.band_ul = scalar_band(f_ul_hz);
  ds.band_dl = scalar_band(f_dl_hz);
  ds.n_antennas = 1;
  ds.scenario = Scenario::los_scalar;
  ds.env_seed = seed;
  ds.samples.resize(n);

  parallel_for(n, [&](std::size_t i) {
    Rng rng(mix_seed(seed, i));
    const double d = rng.uniform(radius_min_m, radius_max_m);
    CsiSample& s = ds.samples[i];
    s.ue_position = arma::vec3{d, 0.0, 0.0};
    s.h_ul.values = arma::cx_mat(1, 1);
    s.h_dl.values = arma::cx_mat(1, 1);
    s.h_ul.values(0, 0) = los_coefficient(d, f_ul_hz, beta);
    s.h_dl.values(0, 0) = los_coefficient(d, f_dl_hz, beta);
  });
  return ds;
}

CsiDataset generate_env_dataset(const ScattererEnvironment& env,
                                const BandConfig& band_ul,
                                const BandConfig& band_dl, std::size_t n,
                                std::uint64_t seed) {
  env.validate();
  band_ul.validate();
  band_dl.validate();
  if (band_ul.bandwidth_hz != band_dl.bandwidth_hz ||
      band_ul.n_sub != band_dl.n_sub || band_ul.n_used != band_dl.n_used)
    throw domain_error("generate_env_dataset: bands must share bandwidth and grid");

  const std::size_t m = env.n_antennas();
  CsiDataset ds;
  ds.band_ul = band_ul;
  ds.band_dl = band_dl;
  ds.n_antennas = static_cast<std::uint32_t>(m);
  ds.scenario = Scenario::synthetic_env;
  ds.env_seed = env.rng_seed;
  ds.samples.resize(n);

  parallel_for(n, [&](std::size_t i) {
    Rng rng(mix_seed(seed, i));
    arma::vec3 pos;
    pos(0) = rng.uniform(env.area_min(0), env.area_max(0));
    pos(1) = rng.uniform(env.area_min(1), env.area_max(1));
    pos(2) = kUeHeightM;
    CsiSample& s = ds.samples[i];
    s.ue_position = pos;
    s.h_ul.values.set_size(m, band_ul.n_used);
    s.h_dl.values.set_size(m, band_dl.n_used);
    for (std::size_t a = 0; a < m; ++a) {
      const PathSet paths = env_paths(env, a, pos);
      s.h_ul.values.row(a) = freq_response(paths, band_ul);
      s.h_dl.values.row(a) = freq_response(paths, band_dl);
    }
  });
  return ds;
}

std::pair<CsiDataset, CsiDataset> split(const CsiDataset& ds,
                                        double train_fraction,
                                        std::uint64_t seed) {
  if (train_fraction < 0.0 || train_fraction > 1.0)
    throw domain_error("split: train_fraction must be within [0, 1]");

  const std::size_t n = ds.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(mix_seed(seed, 0x59717));
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[rng.uniform_index(i)]);

  const auto n_train =
      static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
  CsiDataset train = ds, test = ds;
  train.samples.clear();
  test.samples.clear();
  train.samples.reserve(n_train);
  test.samples.reserve(n - n_train);
  for (std::size_t i = 0; i < n; ++i)
    (i < n_train ? train : test).samples.push_back(ds.samples[order[i]]);
  return {std::move(train), std::move(test)};
}

void save(const CsiDataset& ds, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw parse_error(parse_fault::bad_value,
                      "save: cannot open " + path.string() + " for writing");

  os.write(kDatasetMagic, sizeof(kDatasetMagic));
  io::write_u32(os, kFormatVersion);
  io::write_u32(os, ds.n_antennas);
  io::write_u32(os, ds.band_ul.n_sub);
  io::write_u32(os, ds.band_ul.n_used);
  io::write_u32(os, static_cast<std::uint32_t>(ds.size()));
  io::write_u32(os, static_cast<std::uint32_t>(ds.scenario));
  write_band(os, ds.band_ul);
  write_band(os, ds.band_dl);

  for (const CsiSample& s : ds.samples) {
    for (int i = 0; i < 3; ++i)
      io::write_f32(os, static_cast<float>(s.ue_position(i)));
    write_matrix_f32(os, s.h_ul.values);
    write_matrix_f32(os, s.h_dl.values);
  }
  if (!os)
    throw parse_error(parse_fault::bad_value,
                      "save: write failed for " + path.string());
}

CsiDataset load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw parse_error(parse_fault::bad_value,
                      "load: cannot open " + path.string());

  char magic[sizeof(kDatasetMagic)] = {};
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kDatasetMagic, sizeof(magic)) != 0)
    throw parse_error(parse_fault::bad_magic,
                      "load: not an FDDCSI01 file: " + path.string());

  const std::uint32_t version = io::read_u32(is, "format version");
  if (version != kFormatVersion)
    throw parse_error(parse_fault::bad_value,
                      "load: unsupported FDDCSI01 version " + std::to_string(version));

  CsiDataset ds;
  ds.n_antennas = io::read_u32(is, "antenna count");
  const std::uint32_t n_sub = io::read_u32(is, "n_sub");
  const std::uint32_t n_used = io::read_u32(is, "n_used");
  const std::uint32_t n_samples = io::read_u32(is, "sample count");
  const std::uint32_t flags = io::read_u32(is, "flags");
  if (flags > static_cast<std::uint32_t>(Scenario::synthetic_env))
    throw parse_error(parse_fault::bad_value, "load: unknown scenario flag");
  ds.scenario = static_cast<Scenario>(flags);
  ds.band_ul = read_band(is);
  ds.band_dl = read_band(is);

  if (ds.band_ul.n_sub != n_sub || ds.band_ul.n_used != n_used ||
      ds.band_dl.n_sub != n_sub || ds.band_dl.n_used != n_used)
    throw parse_error(parse_fault::dimension_mismatch,
                      "load: band grids disagree with the header");
  if (ds.n_antennas == 0)
    throw parse_error(parse_fault::dimension_mismatch,
                      "load: antenna count must be positive");

  ds.samples.resize(n_samples);
  for (std::uint32_t i = 0; i < n_samples; ++i) {
    CsiSample& s = ds.samples[i];
    for (int c = 0; c < 3; ++c)
      s.ue_position(c) = io::read_f32(is, "UE position");
    s.h_ul.values = read_matrix_f32(is, ds.n_antennas, n_used);
    s.h_dl.values = read_matrix_f32(is, ds.n_antennas, n_used);
  }
  return ds;
}

}  // namespace fddpred
