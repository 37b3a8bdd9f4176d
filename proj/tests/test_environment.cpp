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

#include <cmath>

#include "fddpred/environment.hpp"
#include "fddpred/errors.hpp"

using namespace fddpred;

namespace {

ScattererEnvironment blank_env() {
  ScattererEnvironment env;
  env.bs_antennas = {arma::vec3{0.0, 0.0, 10.0}};
  env.area_min = {50.0, -50.0, 0.0};
  env.area_max = {250.0, 50.0, 3.0};
  env.pathloss_beta = 2.5;
  env.ref_freq_hz = 1.25e9;
  return env;
}

}  // namespace

TEST_CASE("scatter-free environment yields exactly the direct path") {
  ScattererEnvironment env = blank_env();
  const arma::vec3 ue{120.0, 30.0, 1.5};
  const PathSet ps = env_paths(env, 0, ue);
  REQUIRE(ps.count() == 1);
  const double d = arma::norm(ue - env.bs_antennas[0]);
  CHECK(ps.paths[0].delay_s == doctest::Approx(d / kSpeedOfLight).epsilon(1e-15));
}

TEST_CASE("blocked LoS with three scatterers gives three paths") {
  ScattererEnvironment env = blank_env();
  env.los_blocked = true;
  env.scatterers = {{60.0, 10.0, 5.0}, {100.0, -20.0, 8.0}, {200.0, 0.0, 12.0}};
  env.reflection = {0.9, 0.5, 0.7};
  const PathSet ps = env_paths(env, 0, {150.0, 0.0, 1.5});
  CHECK(ps.count() == 3);
}

TEST_CASE("single-bounce delay and gain match the hand geometry") {
  // BS (0,0,10), scatterer (50,20,5), UE (100,0,1.5), reflection 0.6
  ScattererEnvironment env = blank_env();
  env.scatterers = {{50.0, 20.0, 5.0}};
  env.reflection = {0.6};
  const arma::vec3 ue{100.0, 0.0, 1.5};
  const PathSet ps = env_paths(env, 0, ue);
  REQUIRE(ps.count() == 2);

  // oracle: explicit two-segment geometry
  const double d1 = std::sqrt(50.0 * 50.0 + 20.0 * 20.0 + 3.5 * 3.5);
  const double d2 = std::sqrt(50.0 * 50.0 + 20.0 * 20.0 + 5.0 * 5.0);
  const double total = d1 + d2;
  const double expected_gain =
      0.6 * std::pow(kSpeedOfLight / (4.0 * M_PI * env.ref_freq_hz * total),
                     env.pathloss_beta);
  // the scattered path is the later one (two segments always exceed direct)
  CHECK(ps.paths[1].delay_s == doctest::Approx(total / kSpeedOfLight).epsilon(1e-14));
  CHECK(ps.paths[1].gain == doctest::Approx(expected_gain).epsilon(1e-14));
  CHECK(ps.paths[0].delay_s < ps.paths[1].delay_s);
}

TEST_CASE("env_paths is a pure function: identical inputs, identical bits") {
  ScattererEnvironment env = blank_env();
  env.scatterers = {{60.0, 10.0, 5.0}, {210.0, -40.0, 18.0}};
  env.reflection = {0.8, 0.3};
  const arma::vec3 ue{180.0, -20.0, 1.5};
  const PathSet a = env_paths(env, 0, ue);
  const PathSet b = env_paths(env, 0, ue);
  REQUIRE(a.count() == b.count());
  for (std::size_t i = 0; i < a.count(); ++i) {
    CHECK(a.paths[i].gain == b.paths[i].gain);
    CHECK(a.paths[i].delay_s == b.paths[i].delay_s);
  }
}

TEST_CASE("LoS gain strictly decreases with distance") {
  ScattererEnvironment env = blank_env();
  double prev = std::numeric_limits<double>::infinity();
  for (double x = 60.0; x < 250.0; x += 10.0) {
    const PathSet ps = env_paths(env, 0, {x, 0.0, 1.5});
    CHECK(ps.paths[0].gain < prev);
    prev = ps.paths[0].gain;
  }
}

TEST_CASE("env_paths input validation") {
  ScattererEnvironment env = blank_env();
  CHECK_THROWS_AS(env_paths(env, 3, {100.0, 0.0, 1.5}), domain_error);
  CHECK_THROWS_AS(env_paths(env, 0, {500.0, 0.0, 1.5}), domain_error);

  ScattererEnvironment on_scatterer = blank_env();
  on_scatterer.scatterers = {{100.0, 0.0, 1.5}};
  on_scatterer.reflection = {0.5};
  CHECK_THROWS_AS(env_paths(on_scatterer, 0, {100.0, 0.0, 1.5}), domain_error);
}

TEST_CASE("blocked LoS without scatterers is rejected") {
  ScattererEnvironment env = blank_env();
  env.los_blocked = true;
  CHECK_THROWS_AS(env.validate(), domain_error);
}

TEST_CASE("sampled environments are deterministic by seed") {
  const arma::vec3 amin{80.0, -40.0, 1.5}, amax{160.0, 40.0, 1.5};
  const arma::vec3 smin{20.0, -60.0, 2.0}, smax{180.0, 60.0, 25.0};
  const auto a = ScattererEnvironment::sample(4, 8, amin, amax, smin, smax,
                                              2.5, 1.25e9, false, 7);
  const auto b = ScattererEnvironment::sample(4, 8, amin, amax, smin, smax,
                                              2.5, 1.25e9, false, 7);
  REQUIRE(a.n_scatterers() == 8);
  REQUIRE(a.n_antennas() == 4);
  for (std::size_t s = 0; s < 8; ++s) {
    CHECK(arma::norm(a.scatterers[s] - b.scatterers[s]) == 0.0);
    CHECK(a.reflection[s] == b.reflection[s]);
  }
  CHECK(a.bs_antennas[1](0) ==
        doctest::Approx(kSpeedOfLight / (2.0 * 1.25e9)).epsilon(1e-12));
}

TEST_CASE("path delays always come out sorted") {
  ScattererEnvironment env = blank_env();
  env.scatterers = {{200.0, 40.0, 20.0}, {55.0, -5.0, 3.0}, {140.0, 0.0, 9.0}};
  env.reflection = {0.4, 0.9, 0.6};
  for (double x : {60.0, 110.0, 240.0}) {
    const PathSet ps = env_paths(env, 0, {x, 10.0, 1.5});
    for (std::size_t i = 1; i < ps.count(); ++i)
      CHECK(ps.paths[i - 1].delay_s <= ps.paths[i].delay_s);
  }
}
