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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "fddpred/dataset.hpp"
#include "fddpred/errors.hpp"

using namespace fddpred;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

CsiDataset small_env_dataset(std::size_t n, std::uint64_t seed,
                             std::size_t antennas = 2,
                             std::size_t scatterers = 3) {
  const auto env = ScattererEnvironment::sample(
      antennas, scatterers, {80.0, -40.0, 1.5}, {160.0, 40.0, 1.5},
      {20.0, -60.0, 2.0}, {180.0, 60.0, 25.0}, 2.5, 1.25e9, false, 5);
  BandConfig ul, dl;
  ul.center_freq_hz = 1.25e9;
  dl.center_freq_hz = 1.275e9;
  ul.bandwidth_hz = dl.bandwidth_hz = 20e6;
  ul.n_sub = dl.n_sub = 64;
  ul.n_used = dl.n_used = 50;
  ul.cp_len = dl.cp_len = 16;
  return generate_env_dataset(env, ul, dl, n, seed);
}

bool equal_f32(const CsiDataset& a, const CsiDataset& b) {
  if (a.size() != b.size() || a.n_antennas != b.n_antennas ||
      a.scenario != b.scenario)
    return false;
  if (a.band_ul.center_freq_hz != b.band_ul.center_freq_hz ||
      a.band_dl.center_freq_hz != b.band_dl.center_freq_hz)
    return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int c = 0; c < 3; ++c)
      if (static_cast<float>(a.samples[i].ue_position(c)) !=
          static_cast<float>(b.samples[i].ue_position(c)))
        return false;
    for (arma::uword e = 0; e < a.samples[i].h_ul.values.n_elem; ++e) {
      const auto au = a.samples[i].h_ul.values(e), bu = b.samples[i].h_ul.values(e);
      const auto ad = a.samples[i].h_dl.values(e), bd = b.samples[i].h_dl.values(e);
      if (static_cast<float>(au.real()) != static_cast<float>(bu.real()) ||
          static_cast<float>(au.imag()) != static_cast<float>(bu.imag()) ||
          static_cast<float>(ad.real()) != static_cast<float>(bd.real()) ||
          static_cast<float>(ad.imag()) != static_cast<float>(bd.imag()))
        return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("empty scalar dataset keeps valid metadata") {
  const auto ds =
      generate_los_scalar_dataset(0, 100.0, 200.0, 2.5e9, 2.501e9, 2.5, 1);
  CHECK(ds.size() == 0);
  CHECK(ds.n_antennas == 1);
  CHECK(ds.delta_f_hz() == doctest::Approx(1e6));
  CHECK_NOTHROW(ds.band_ul.validate());
}

TEST_CASE("scalar dataset magnitudes obey the band power law") {
  const double beta = 2.5, f_ul = 2.5e9, f_dl = 2.525e9;
  const auto ds =
      generate_los_scalar_dataset(500, 100.0, 200.0, f_ul, f_dl, beta, 3);
  const double ratio = std::pow(f_ul / f_dl, beta);
  for (const CsiSample& s : ds.samples) {
    CHECK(std::abs(s.h_dl.values(0, 0)) ==
          doctest::Approx(ratio * std::abs(s.h_ul.values(0, 0))).epsilon(1e-12));
    CHECK(s.ue_position(0) >= 100.0);
    CHECK(s.ue_position(0) <= 200.0);
  }
}

TEST_CASE("scalar dataset default evaluation count") {
  const auto ds =
      generate_los_scalar_dataset(5000, 100.0, 200.0, 2.5e9, 2.501e9, 2.5, 1);
  CHECK(ds.size() == 5000);
}

TEST_CASE("scalar dataset rejects bad radii") {
  CHECK_THROWS_AS(
      generate_los_scalar_dataset(10, 200.0, 100.0, 2.5e9, 2.501e9, 2.5, 1),
      domain_error);
  CHECK_THROWS_AS(
      generate_los_scalar_dataset(10, 0.0, 100.0, 2.5e9, 2.501e9, 2.5, 1),
      domain_error);
}

TEST_CASE("env dataset generation is bitwise deterministic") {
  const auto a = small_env_dataset(20, 11);
  const auto b = small_env_dataset(20, 11);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(arma::approx_equal(a.samples[i].h_ul.values, b.samples[i].h_ul.values,
                             "absdiff", 0.0));
    CHECK(arma::approx_equal(a.samples[i].h_dl.values, b.samples[i].h_dl.values,
                             "absdiff", 0.0));
  }
}

TEST_CASE("scatter-free environment rows are flat in magnitude") {
  const auto env = ScattererEnvironment::sample(
      2, 0, {80.0, -40.0, 1.5}, {160.0, 40.0, 1.5}, {0.0, 0.0, 0.0},
      {1.0, 1.0, 1.0}, 2.5, 1.25e9, false, 5);
  BandConfig ul, dl;
  ul.center_freq_hz = 1.25e9;
  dl.center_freq_hz = 1.275e9;
  ul.bandwidth_hz = dl.bandwidth_hz = 20e6;
  ul.n_sub = dl.n_sub = 64;
  ul.n_used = dl.n_used = 50;
  const auto ds = generate_env_dataset(env, ul, dl, 5, 17);
  for (const CsiSample& s : ds.samples)
    for (arma::uword a = 0; a < s.h_ul.values.n_rows; ++a) {
      const double ref = std::abs(s.h_ul.values(a, 0));
      for (arma::uword k = 0; k < s.h_ul.values.n_cols; ++k)
        CHECK(std::abs(s.h_ul.values(a, k)) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("zero band separation produces identical UL and DL matrices") {
  const auto env = ScattererEnvironment::sample(
      1, 4, {80.0, -40.0, 1.5}, {160.0, 40.0, 1.5}, {20.0, -60.0, 2.0},
      {180.0, 60.0, 25.0}, 2.5, 1.25e9, false, 5);
  BandConfig band;
  band.center_freq_hz = 1.25e9;
  band.bandwidth_hz = 20e6;
  band.n_sub = 64;
  band.n_used = 50;
  const auto ds = generate_env_dataset(env, band, band, 4, 23);
  for (const CsiSample& s : ds.samples)
    CHECK(arma::approx_equal(s.h_ul.values, s.h_dl.values, "absdiff", 0.0));
}

TEST_CASE("split honors the 90/10 contract") {
  const auto ds =
      generate_los_scalar_dataset(1000, 100.0, 200.0, 2.5e9, 2.501e9, 2.5, 1);
  const auto [train, test] = split(ds, 0.9, 4);
  CHECK(train.size() == 900);
  CHECK(test.size() == 100);
}

TEST_CASE("split partitions are disjoint and exhaustive") {
  const auto ds =
      generate_los_scalar_dataset(257, 100.0, 200.0, 2.5e9, 2.501e9, 2.5, 2);
  const auto [train, test] = split(ds, 0.7, 9);
  std::multiset<double> seen;
  for (const auto& s : train.samples) seen.insert(s.ue_position(0));
  for (const auto& s : test.samples) seen.insert(s.ue_position(0));
  std::multiset<double> all;
  for (const auto& s : ds.samples) all.insert(s.ue_position(0));
  CHECK(seen == all);
  CHECK(train.size() + test.size() == ds.size());
}

TEST_CASE("split with fraction 1.0 leaves the test set empty") {
  const auto ds =
      generate_los_scalar_dataset(50, 100.0, 200.0, 2.5e9, 2.501e9, 2.5, 2);
  const auto [train, test] = split(ds, 1.0, 1);
  CHECK(train.size() == 50);
  CHECK(test.size() == 0);
}

TEST_CASE("split is stable for identical inputs") {
  const auto ds =
      generate_los_scalar_dataset(100, 100.0, 200.0, 2.5e9, 2.501e9, 2.5, 2);
  const auto [a_train, a_test] = split(ds, 0.8, 31);
  const auto [b_train, b_test] = split(ds, 0.8, 31);
  REQUIRE(a_train.size() == b_train.size());
  for (std::size_t i = 0; i < a_train.size(); ++i)
    CHECK(a_train.samples[i].ue_position(0) == b_train.samples[i].ue_position(0));
}

TEST_CASE("save/load round trip preserves every field at float32") {
  const auto ds = small_env_dataset(12, 3);
  const auto path = temp_file("fddpred_roundtrip.fddcsi");
  save(ds, path);
  const auto back = load(path);
  CHECK(equal_f32(ds, back));
  CHECK(back.band_ul.cp_len == ds.band_ul.cp_len);
  std::filesystem::remove(path);
}

TEST_CASE("scalar dataset round trip") {
  const auto ds =
      generate_los_scalar_dataset(40, 100.0, 200.0, 2.5e9, 2.525e9, 2.5, 5);
  const auto path = temp_file("fddpred_roundtrip_scalar.fddcsi");
  save(ds, path);
  CHECK(equal_f32(ds, load(path)));
  std::filesystem::remove(path);
}

TEST_CASE("load rejects a wrong magic with the right fault") {
  const auto path = temp_file("fddpred_badmagic.fddcsi");
  std::ofstream os(path, std::ios::binary);
  os << "NOTMAGIC" << std::string(64, '\0');
  os.close();
  try {
    load(path);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.fault() == parse_fault::bad_magic);
  }
  std::filesystem::remove(path);
}

TEST_CASE("load reports truncation when the payload is short") {
  const auto ds = small_env_dataset(6, 8);
  const auto path = temp_file("fddpred_trunc.fddcsi");
  save(ds, path);
  const auto full = std::filesystem::file_size(path);
  std::filesystem::resize_file(path, full - 60);
  try {
    load(path);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.fault() == parse_fault::truncated);
  }
  std::filesystem::remove(path);
}

TEST_CASE("load reports dimension mismatches distinctly") {
  const auto ds = small_env_dataset(2, 8);
  const auto path = temp_file("fddpred_dim.fddcsi");
  save(ds, path);
  // corrupt the header n_used field (offset: 8 magic + 4 version + 4 M + 4 n_sub)
  std::fstream fs(path, std::ios::in | std::ios::out | std::ios::binary);
  fs.seekp(8 + 4 + 4 + 4);
  const std::uint32_t wrong = 9999;
  fs.write(reinterpret_cast<const char*>(&wrong), sizeof(wrong));
  fs.close();
  try {
    load(path);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.fault() == parse_fault::dimension_mismatch);
  }
  std::filesystem::remove(path);
}
