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

#include <cstddef>
#include <functional>

namespace fddpred {

/// Worker count: min(hardware_concurrency, FDDPRED_THREADS if set), at least 1.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n). Work is split into fixed contiguous chunks so
/// results written per-index are identical for any thread count. fn must not
/// touch shared mutable state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace fddpred
