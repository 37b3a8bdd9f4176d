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

#include "fddpred/band.hpp"

#include <cmath>

#include "fddpred/errors.hpp"

namespace fddpred {

void BandConfig::validate() const {
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
    throw domain_error("BandConfig: bandwidth must be positive");
  if (!(center_freq_hz > bandwidth_hz / 2.0))
    throw domain_error("BandConfig: center frequency must exceed half the bandwidth");
  if (n_sub == 0 || n_used == 0 || n_used > n_sub)
    throw domain_error("BandConfig: need 0 < n_used <= n_sub");
}

BandConfig shifted_band(const BandConfig& band, double new_center_hz) {
  BandConfig out = band;
  out.center_freq_hz = new_center_hz;
  out.validate();
  return out;
}

}  // namespace fddpred
