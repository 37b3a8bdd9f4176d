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

#include "fddpred/predictor.hpp"

#include "fddpred/errors.hpp"

namespace fddpred {

Predictor make_analytical_predictor(double f_ul_hz, double f_dl_hz,
                                    double beta) {
  return [=](const CsiSample& s) {
    CsiMatrix out;
    out.values.set_size(s.h_ul.values.n_rows, s.h_ul.values.n_cols);
    for (arma::uword i = 0; i < s.h_ul.values.n_elem; ++i)
      out.values(i) =
          analytical_los_predict(s.h_ul.values(i), f_ul_hz, f_dl_hz, beta);
    return out;
  };
}

Predictor make_wiener_predictor(std::shared_ptr<const WienerModel> model) {
  if (!model) throw domain_error("make_wiener_predictor: null model");
  return [model = std::move(model)](const CsiSample& s) {
    return wiener_predict(*model, s.h_ul);
  };
}

Predictor make_nn_predictor(std::shared_ptr<const nn::CsiModel> model) {
  if (!model) throw domain_error("make_nn_predictor: null model");
  return [model = std::move(model)](const CsiSample& s) {
    return nn::predict(*model, s.h_ul);
  };
}

std::vector<CsiMatrix> predict_all(const CsiDataset& ds,
                                   const Predictor& predictor) {
  std::vector<CsiMatrix> out;
  out.reserve(ds.size());
  for (const CsiSample& s : ds.samples) out.push_back(predictor(s));
  return out;
}

std::vector<CsiMatrix> labels_of(const CsiDataset& ds) {
  std::vector<CsiMatrix> out;
  out.reserve(ds.size());
  for (const CsiSample& s : ds.samples) out.push_back(s.h_dl);
  return out;
}

}  // namespace fddpred
