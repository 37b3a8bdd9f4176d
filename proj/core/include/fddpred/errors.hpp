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

#include <stdexcept>
#include <string>

namespace fddpred {

/// Violated input contract (bad argument, inconsistent dimensions, ...).
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Failure of a numerical procedure (singular solve, diverged training, ...).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// What went wrong while reading a binary artifact file.
enum class parse_fault {
  bad_magic,
  truncated,
  dimension_mismatch,
  bad_value,
};

/// Malformed dataset or checkpoint file. `fault()` identifies the failure class.
class parse_error : public std::runtime_error {
 public:
  parse_error(parse_fault fault, const std::string& what)
      : std::runtime_error(what), fault_(fault) {}
  parse_fault fault() const noexcept { return fault_; }

 private:
  parse_fault fault_;
};

}  // namespace fddpred
