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

#include <memory>

#include "fddpred/estimators.hpp"
#include "fddpred/nn/train.hpp"
#include "fddpred/precoding.hpp"

namespace fddpred {

/// Predictor adapters binding the estimators to the evaluation interfaces.
Predictor make_analytical_predictor(double f_ul_hz, double f_dl_hz,
                                    double beta);
Predictor make_wiener_predictor(std::shared_ptr<const WienerModel> model);
Predictor make_nn_predictor(std::shared_ptr<const nn::CsiModel> model);

/// Applies a predictor to every sample of a dataset; returns predictions in
/// sample order.
std::vector<CsiMatrix> predict_all(const CsiDataset& ds,
                                   const Predictor& predictor);

/// True downlink labels in sample order.
std::vector<CsiMatrix> labels_of(const CsiDataset& ds);

}  // namespace fddpred
