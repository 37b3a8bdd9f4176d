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

// Little-endian binary stream helpers shared by the dataset and checkpoint
// readers/writers.

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "fddpred/errors.hpp"

namespace fddpred::io {

static_assert(std::endian::native == std::endian::little,
              "file writers assume a little-endian host");

template <typename T>
void write_pod(std::ostream& os, T value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

inline void write_u32(std::ostream& os, std::uint32_t v) { write_pod(os, v); }
inline void write_f32(std::ostream& os, float v) { write_pod(os, v); }
inline void write_f64(std::ostream& os, double v) { write_pod(os, v); }

template <typename T>
T read_pod(std::istream& is, const char* what) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is)
    throw parse_error(parse_fault::truncated,
                      std::string("unexpected end of file while reading ") + what);
  return value;
}

inline std::uint32_t read_u32(std::istream& is, const char* what) {
  return read_pod<std::uint32_t>(is, what);
}
inline float read_f32(std::istream& is, const char* what) {
  return read_pod<float>(is, what);
}
inline double read_f64(std::istream& is, const char* what) {
  return read_pod<double>(is, what);
}

}  // namespace fddpred::io
