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

#include <filesystem>

#include "fddpred/nn/train.hpp"

namespace fddpred::nn {

/// FDDNN001 checkpoint: magic, codec/scaling header, layer-spec table, then
/// f32 weight tensors in layer order (W row-major, then b). Little-endian.
void save_checkpoint(const CsiModel& model, const std::filesystem::path& path);
CsiModel load_checkpoint(const std::filesystem::path& path);

inline constexpr char kCheckpointMagic[8] = {'F', 'D', 'D', 'N', 'N', '0', '0', '1'};

}  // namespace fddpred::nn
