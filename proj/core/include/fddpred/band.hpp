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

namespace fddpred {

/// One OFDM band: center frequency, sampling bandwidth and subcarrier grid.
/// The n_used data subcarriers are the centered contiguous block of the
/// n_sub FFT bins; the remaining bins are symmetric guard bands.
struct BandConfig {
  double center_freq_hz = 0.0;
  double bandwidth_hz = 0.0;
  std::uint32_t n_sub = 1024;
  std::uint32_t n_used = 922;
  std::uint32_t cp_len = 256;

  double subcarrier_spacing_hz() const {
    return bandwidth_hz / static_cast<double>(n_sub);
  }

  /// FFT bin index of used subcarrier 0 (guards split evenly, extra bin low).
  std::uint32_t first_used_bin() const { return (n_sub - n_used + 1) / 2; }

  /// Baseband frequency offset of used subcarrier k relative to the center.
  double used_offset_hz(std::uint32_t used_idx) const {
    const double bin = static_cast<double>(first_used_bin() + used_idx);
    return (bin - static_cast<double>(n_sub) / 2.0) * subcarrier_spacing_hz();
  }

  /// Throws domain_error if the configuration is inconsistent.
  void validate() const;
};

/// Band with the same grid shifted to a new center frequency.
BandConfig shifted_band(const BandConfig& band, double new_center_hz);

}  // namespace fddpred
