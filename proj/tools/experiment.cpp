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

#include "experiment.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>

#include <json.hpp>

#include "fddpred/errors.hpp"
#include "fddpred/estimators.hpp"
#include "fddpred/nn/checkpoint.hpp"
#include "fddpred/predictor.hpp"

namespace fddpred::cli {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object())
    throw config_error("config: '" + where + "' must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) known |= item.key() == k;
    if (!known)
      throw config_error("config: unknown key '" + item.key() + "' in " + where);
  }
}

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw config_error(std::string("config: '") + key + "' must be a number");
  return j[key].get<double>();
}

std::uint64_t get_uint(const json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_unsigned())
    throw config_error(std::string("config: '") + key +
                       "' must be a non-negative integer");
  return j[key].get<std::uint64_t>();
}

bool get_bool(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean())
    throw config_error(std::string("config: '") + key + "' must be a boolean");
  return j[key].get<bool>();
}

std::string get_str(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string())
    throw config_error(std::string("config: '") + key + "' must be a string");
  return j[key].get<std::string>();
}

arma::vec3 get_vec3(const json& j, const char* key, const arma::vec3& fallback) {
  if (!j.contains(key)) return fallback;
  const json& a = j[key];
  if (!a.is_array() || a.size() != 3)
    throw config_error(std::string("config: '") + key +
                       "' must be an array of 3 numbers");
  arma::vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!a[i].is_number())
      throw config_error(std::string("config: '") + key + "' must be numeric");
    v(i) = a[i].get<double>();
  }
  return v;
}

BandConfig scalar_band(double f_hz) {
  BandConfig b;
  b.center_freq_hz = f_hz;
  b.bandwidth_hz = 20e6;
  b.n_sub = 1;
  b.n_used = 1;
  b.cp_len = 0;
  return b;
}

BandConfig ofdm_band(double f_hz) {
  BandConfig b;
  b.center_freq_hz = f_hz;
  b.bandwidth_hz = 20e6;
  b.n_sub = 1024;
  b.n_used = 922;
  b.cp_len = 256;
  return b;
}

void parse_into(const json& j, ExperimentConfig& cfg) {
  check_keys(j, "top level",
             {"scenario", "seed", "out_dir", "n_samples", "train_fraction",
              "bands", "los", "env", "predictor", "wiener", "train", "ber",
              "precoding", "sweep", "dataset_path", "model_path"});

  const std::string scenario = get_str(j, "scenario", "los_scalar");
  if (scenario == "los_scalar")
    cfg.scenario = Scenario::los_scalar;
  else if (scenario == "synthetic_env")
    cfg.scenario = Scenario::synthetic_env;
  else
    throw config_error("config: scenario must be los_scalar or synthetic_env");

  cfg.seed = get_uint(j, "seed", cfg.seed);
  cfg.out_dir = get_str(j, "out_dir", cfg.out_dir.string());
  cfg.n_samples = static_cast<std::uint32_t>(get_uint(j, "n_samples", cfg.n_samples));
  cfg.train_fraction = get_num(j, "train_fraction", cfg.train_fraction);
  if (cfg.train_fraction < 0.0 || cfg.train_fraction > 1.0)
    throw config_error("config: train_fraction must be within [0, 1]");

  // scenario-dependent band defaults, then explicit overrides
  const bool scalar = cfg.scenario == Scenario::los_scalar;
  double f_ul = scalar ? 2.5e9 : 1.25e9;
  double f_dl = scalar ? 2.501e9 : 1.275e9;
  BandConfig proto = scalar ? scalar_band(f_ul) : ofdm_band(f_ul);
  if (j.contains("bands")) {
    const json& b = j["bands"];
    check_keys(b, "bands",
               {"f_ul_hz", "f_dl_hz", "bandwidth_hz", "n_sub", "n_used", "cp_len"});
    f_ul = get_num(b, "f_ul_hz", f_ul);
    f_dl = get_num(b, "f_dl_hz", f_dl);
    proto.bandwidth_hz = get_num(b, "bandwidth_hz", proto.bandwidth_hz);
    proto.n_sub = static_cast<std::uint32_t>(get_uint(b, "n_sub", proto.n_sub));
    proto.n_used = static_cast<std::uint32_t>(get_uint(b, "n_used", proto.n_used));
    proto.cp_len = static_cast<std::uint32_t>(get_uint(b, "cp_len", proto.cp_len));
  }
  cfg.band_ul = proto;
  cfg.band_ul.center_freq_hz = f_ul;
  cfg.band_dl = proto;
  cfg.band_dl.center_freq_hz = f_dl;
  cfg.band_ul.validate();
  cfg.band_dl.validate();

  if (j.contains("los")) {
    const json& l = j["los"];
    check_keys(l, "los", {"radius_min_m", "radius_max_m", "pathloss_beta"});
    cfg.radius_min_m = get_num(l, "radius_min_m", cfg.radius_min_m);
    cfg.radius_max_m = get_num(l, "radius_max_m", cfg.radius_max_m);
    cfg.los_beta = get_num(l, "pathloss_beta", cfg.los_beta);
  }

  if (j.contains("env")) {
    const json& e = j["env"];
    check_keys(e, "env",
               {"m_antennas", "n_scatterers", "los_blocked", "pathloss_beta",
                "area_min", "area_max", "scatter_min", "scatter_max", "seed"});
    cfg.env_antennas =
        static_cast<std::uint32_t>(get_uint(e, "m_antennas", cfg.env_antennas));
    cfg.env_scatterers = static_cast<std::uint32_t>(
        get_uint(e, "n_scatterers", cfg.env_scatterers));
    cfg.env_los_blocked = get_bool(e, "los_blocked", cfg.env_los_blocked);
    cfg.env_beta = get_num(e, "pathloss_beta", cfg.env_beta);
    cfg.env_area_min = get_vec3(e, "area_min", cfg.env_area_min);
    cfg.env_area_max = get_vec3(e, "area_max", cfg.env_area_max);
    cfg.env_scatter_min = get_vec3(e, "scatter_min", cfg.env_scatter_min);
    cfg.env_scatter_max = get_vec3(e, "scatter_max", cfg.env_scatter_max);
    cfg.env_seed = get_uint(e, "seed", cfg.env_seed);
  }

  const std::string pred = get_str(j, "predictor", "analytical");
  if (pred == "analytical")
    cfg.predictor = PredictorKind::analytical;
  else if (pred == "wiener_global")
    cfg.predictor = PredictorKind::wiener_global;
  else if (pred == "wiener_matched")
    cfg.predictor = PredictorKind::wiener_matched;
  else if (pred == "nn")
    cfg.predictor = PredictorKind::nn;
  else
    throw config_error("config: unknown predictor '" + pred + "'");

  if (j.contains("wiener")) {
    const json& w = j["wiener"];
    check_keys(w, "wiener", {"sigma2"});
    cfg.wiener_sigma2 = get_num(w, "sigma2", cfg.wiener_sigma2);
  }

  if (j.contains("train")) {
    const json& t = j["train"];
    check_keys(t, "train",
               {"architecture", "epochs", "learning_rate", "initial_batch",
                "final_batch", "train_snr_db", "early_stop_nmse", "seed",
                "batch_doubling_epochs"});
    cfg.architecture = get_str(t, "architecture", cfg.architecture);
    cfg.train.epochs =
        static_cast<std::uint32_t>(get_uint(t, "epochs", cfg.train.epochs));
    cfg.train.learning_rate =
        get_num(t, "learning_rate", cfg.train.learning_rate);
    cfg.train.initial_batch = static_cast<std::uint32_t>(
        get_uint(t, "initial_batch", cfg.train.initial_batch));
    cfg.train.final_batch = static_cast<std::uint32_t>(
        get_uint(t, "final_batch", cfg.train.final_batch));
    if (t.contains("train_snr_db")) {
      if (t["train_snr_db"].is_string() && t["train_snr_db"] == "inf")
        cfg.train.train_snr_db = nn::kNoInputNoise;
      else if (t["train_snr_db"].is_number())
        cfg.train.train_snr_db = t["train_snr_db"].get<double>();
      else
        throw config_error("config: train_snr_db must be a number or \"inf\"");
    }
    cfg.train.early_stop_nmse =
        get_num(t, "early_stop_nmse", cfg.train.early_stop_nmse);
    cfg.train.seed = get_uint(t, "seed", cfg.train.seed);
    if (t.contains("batch_doubling_epochs")) {
      if (!t["batch_doubling_epochs"].is_array())
        throw config_error("config: batch_doubling_epochs must be an array");
      cfg.train.batch_doubling_epochs.clear();
      for (const auto& v : t["batch_doubling_epochs"]) {
        if (!v.is_number_unsigned())
          throw config_error("config: batch_doubling_epochs entries must be integers");
        cfg.train.batch_doubling_epochs.push_back(v.get<std::uint32_t>());
      }
    }
  }

  if (j.contains("ber")) {
    const json& b = j["ber"];
    check_keys(b, "ber", {"enabled", "snr_grid_db", "n_bits", "mode"});
    cfg.ber_enabled = get_bool(b, "enabled", cfg.ber_enabled);
    if (b.contains("snr_grid_db")) {
      if (!b["snr_grid_db"].is_array())
        throw config_error("config: snr_grid_db must be an array");
      cfg.ber_snr_grid_db.clear();
      for (const auto& v : b["snr_grid_db"]) {
        if (!v.is_number())
          throw config_error("config: snr_grid_db entries must be numbers");
        cfg.ber_snr_grid_db.push_back(v.get<double>());
      }
    }
    cfg.ber_n_bits = get_uint(b, "n_bits", cfg.ber_n_bits);
    const std::string mode = get_str(b, "mode", "equalize");
    if (mode == "equalize")
      cfg.ber_mode = BerMode::equalize;
    else if (mode == "mrt_precode")
      cfg.ber_mode = BerMode::mrt_precode;
    else
      throw config_error("config: ber mode must be equalize or mrt_precode");
  }

  if (j.contains("precoding")) {
    const json& p = j["precoding"];
    check_keys(p, "precoding",
               {"enabled", "n_users", "precoder", "snr_db", "n_draws", "sigma2"});
    cfg.precoding_enabled = get_bool(p, "enabled", cfg.precoding_enabled);
    cfg.precoding_users = static_cast<std::uint32_t>(
        get_uint(p, "n_users", cfg.precoding_users));
    const std::string pc = get_str(p, "precoder", "mrt");
    if (pc == "mrt")
      cfg.precoder = Precoder::mrt;
    else if (pc == "zf")
      cfg.precoder = Precoder::zf;
    else
      throw config_error("config: precoder must be mrt or zf");
    cfg.precoding_snr_db = get_num(p, "snr_db", cfg.precoding_snr_db);
    cfg.precoding_draws = static_cast<std::uint32_t>(
        get_uint(p, "n_draws", cfg.precoding_draws));
    if (p.contains("sigma2")) cfg.precoding_sigma2 = get_num(p, "sigma2", 0.0);
  }

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    check_keys(s, "sweep", {"kind", "delta_f_grid_hz", "n_train_grid", "m_grid"});
    cfg.sweep_kind = get_str(s, "kind", cfg.sweep_kind);
    if (s.contains("delta_f_grid_hz")) {
      if (!s["delta_f_grid_hz"].is_array())
        throw config_error("config: delta_f_grid_hz must be an array");
      cfg.sweep.delta_f_hz.clear();
      cfg.sweep.delta_f_set = true;
      for (const auto& v : s["delta_f_grid_hz"])
        cfg.sweep.delta_f_hz.push_back(v.get<double>());
    }
    if (s.contains("n_train_grid")) {
      if (!s["n_train_grid"].is_array())
        throw config_error("config: n_train_grid must be an array");
      cfg.sweep.n_train.clear();
      cfg.sweep.n_train_set = true;
      for (const auto& v : s["n_train_grid"])
        cfg.sweep.n_train.push_back(v.get<std::uint32_t>());
    }
    if (s.contains("m_grid")) {
      if (!s["m_grid"].is_array())
        throw config_error("config: m_grid must be an array");
      cfg.sweep.m.clear();
      cfg.sweep.m_set = true;
      for (const auto& v : s["m_grid"])
        cfg.sweep.m.push_back(v.get<std::uint32_t>());
    }
  }

  if (j.contains("dataset_path"))
    cfg.dataset_path = get_str(j, "dataset_path", "");
  if (j.contains("model_path")) cfg.model_path = get_str(j, "model_path", "");
}

ScattererEnvironment make_environment(const ExperimentConfig& cfg) {
  return ScattererEnvironment::sample(
      cfg.env_antennas, cfg.env_scatterers, cfg.env_area_min, cfg.env_area_max,
      cfg.env_scatter_min, cfg.env_scatter_max, cfg.env_beta,
      cfg.band_ul.center_freq_hz, cfg.env_los_blocked, cfg.env_seed);
}

CsiDataset generate_dataset(const ExperimentConfig& cfg) {
  if (cfg.scenario == Scenario::los_scalar)
    return generate_los_scalar_dataset(
        cfg.n_samples, cfg.radius_min_m, cfg.radius_max_m,
        cfg.band_ul.center_freq_hz, cfg.band_dl.center_freq_hz, cfg.los_beta,
        cfg.seed);
  return generate_env_dataset(make_environment(cfg), cfg.band_ul, cfg.band_dl,
                              cfg.n_samples, cfg.seed);
}

std::string resolve_architecture(const ExperimentConfig& cfg,
                                 const CsiDataset& ds) {
  if (cfg.architecture != "auto") return cfg.architecture;
  if (ds.scenario == Scenario::los_scalar) return "los";
  return ds.n_antennas == 1 ? "siso" : "mimo";
}

nn::CsiModel build_model(const std::string& arch, const CsiDataset& ds) {
  nn::CsiModel model;
  if (arch == "los")
    model.net = nn::build_los_net();
  else if (arch == "siso")
    model.net = nn::build_siso_net();
  else if (arch == "mimo")
    model.net = nn::build_mimo_net(ds.n_antennas);
  else
    throw config_error("config: architecture must be auto, los, siso or mimo");
  model.codec = nn::CsiCodec::for_band(ds.band_ul, ds.n_antennas);
  if (model.codec.shape() != model.net.input_shape)
    throw config_error(
        "config: architecture '" + arch +
        "' does not match the dataset grid (expected input " +
        std::to_string(model.net.input_shape.len) + "x" +
        std::to_string(model.net.input_shape.ch) + ")");
  return model;
}

Predictor resolve_predictor(const ExperimentConfig& cfg, const CsiDataset& ds,
                            const CsiDataset& train_split) {
  switch (cfg.predictor) {
    case PredictorKind::analytical:
      if (ds.scenario != Scenario::los_scalar)
        throw config_error(
            "config: the analytical predictor applies to the los_scalar scenario only");
      return make_analytical_predictor(ds.band_ul.center_freq_hz,
                                       ds.band_dl.center_freq_hz, cfg.los_beta);
    case PredictorKind::wiener_global:
    case PredictorKind::wiener_matched: {
      const auto variant = cfg.predictor == PredictorKind::wiener_global
                               ? WienerVariant::global
                               : WienerVariant::matched;
      auto model = std::make_shared<WienerModel>(
          wiener_fit(train_split, cfg.wiener_sigma2, variant));
      return make_wiener_predictor(std::move(model));
    }
    case PredictorKind::nn: {
      auto model =
          std::make_shared<nn::CsiModel>(nn::load_checkpoint(cfg.model_file()));
      if (model->codec.n_used != ds.band_ul.n_used ||
          model->codec.n_antennas != ds.n_antennas)
        throw parse_error(parse_fault::dimension_mismatch,
                          "evaluate: checkpoint does not match the dataset grid");
      return make_nn_predictor(std::move(model));
    }
  }
  throw config_error("config: unknown predictor");
}

double precoding_noise(const ExperimentConfig& cfg, const CsiDataset& test) {
  if (cfg.precoding_sigma2) return *cfg.precoding_sigma2;
  // per-antenna mean subcarrier power of the true downlink, over linear SNR
  double power = 0.0;
  std::size_t count = 0;
  for (const CsiSample& s : test.samples) {
    power += arma::accu(arma::square(arma::abs(s.h_dl.values)));
    count += s.h_dl.values.n_elem;
  }
  if (count == 0) throw domain_error("precoding: empty test set");
  return (power / static_cast<double>(count)) /
         std::pow(10.0, cfg.precoding_snr_db / 10.0);
}

}  // namespace

ExperimentConfig default_config(const Overrides& overrides) {
  ExperimentConfig cfg;
  cfg.band_ul = scalar_band(2.5e9);
  cfg.band_dl = scalar_band(2.501e9);
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             const Overrides& overrides) {
  std::ifstream is(path);
  if (!is) throw config_error("config: cannot open " + path.string());
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  parse_into(j, cfg);
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
  return cfg;
}

int cmd_generate(const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  const CsiDataset ds = generate_dataset(cfg);
  save(ds, cfg.dataset_file());
  std::cout << "dataset: " << cfg.dataset_file().string() << "\n"
            << "samples: " << ds.size() << "\n"
            << "antennas: " << ds.n_antennas << "\n"
            << "f_ul_hz: " << fmt(ds.band_ul.center_freq_hz) << "\n"
            << "f_dl_hz: " << fmt(ds.band_dl.center_freq_hz) << "\n"
            << "delta_f_hz: " << fmt(ds.delta_f_hz()) << "\n"
            << "n_sub: " << ds.band_ul.n_sub << "\n"
            << "n_used: " << ds.band_ul.n_used << "\n";
  return 0;
}

int cmd_train(const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  const CsiDataset ds = load(cfg.dataset_file());
  auto [train_split, test_split] = split(ds, cfg.train_fraction, cfg.seed);
  if (train_split.size() == 0)
    throw domain_error("train: the split produced an empty training set");

  nn::CsiModel model = build_model(resolve_architecture(cfg, ds), ds);
  nn::init_weights(model.net, cfg.train.seed);
  const nn::TrainResult result = nn::train_csi_model(model, train_split, cfg.train);

  nn::save_checkpoint(model, cfg.model_file());
  const std::filesystem::path history = cfg.out_dir / "loss_history.csv";
  std::ofstream os(history);
  os << "epoch,batch_size,train_nmse\n";
  for (std::size_t e = 0; e < result.loss_history.size(); ++e)
    os << e << "," << result.batch_sizes[e] << ","
       << fmt(result.loss_history[e]) << "\n";

  std::cout << "model: " << cfg.model_file().string() << "\n"
            << "history: " << history.string() << "\n"
            << "epochs_run: " << result.loss_history.size() << "\n"
            << "final_train_nmse: "
            << fmt(result.loss_history.empty() ? 0.0 : result.loss_history.back())
            << "\n";
  return 0;
}

int cmd_evaluate(const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  const CsiDataset ds = load(cfg.dataset_file());
  auto [train_split, test_split] = split(ds, cfg.train_fraction, cfg.seed);
  if (test_split.size() == 0)
    throw domain_error("evaluate: the split produced an empty test set");

  const Predictor predictor = resolve_predictor(cfg, ds, train_split);
  const std::vector<CsiMatrix> predictions = predict_all(test_split, predictor);
  const std::vector<CsiMatrix> truth = labels_of(test_split);

  const std::filesystem::path out = cfg.out_dir / "metrics.csv";
  std::ofstream os(out);
  os << "metric,param,value\n";
  os << "n_test,," << test_split.size() << "\n";
  os << "nmse,," << fmt(nmse(predictions, truth)) << "\n";
  os << "corr,," << fmt(corr_coeff(predictions, truth)) << "\n";

  if (cfg.ber_enabled) {
    const BerMode mode =
        ds.n_antennas > 1 ? BerMode::mrt_precode : cfg.ber_mode;
    const BerCurve curve = ber_qpsk(truth, predictions, cfg.ber_snr_grid_db,
                                    cfg.ber_n_bits, mode, cfg.seed);
    for (std::size_t i = 0; i < curve.ber.size(); ++i)
      os << "ber," << fmt(curve.snr_points_db[i]) << "," << fmt(curve.ber[i])
         << "\n";
  }

  if (cfg.precoding_enabled) {
    const double sigma2 = precoding_noise(cfg, test_split);
    const auto [pred_report, bound_report] = evaluate_predictor(
        test_split, predictor, cfg.precoder, cfg.precoding_users, sigma2,
        cfg.seed, cfg.precoding_draws);
    const char* tag = cfg.precoder == Precoder::mrt ? "mrt" : "zf";
    os << "sum_rate_pred," << tag << "," << fmt(pred_report.sum_rate) << "\n";
    os << "sum_rate_bound," << tag << "," << fmt(bound_report.sum_rate) << "\n";
    os << "sigma2," << tag << "," << fmt(sigma2) << "\n";
  }

  std::cout << "metrics: " << out.string() << "\n";
  return 0;
}

namespace {

int sweep_fig3(const ExperimentConfig& cfg, std::ofstream& os) {
  os << "delta_f_hz,predictor,snr_db,ber\n";
  const std::vector<double> grid =
      cfg.sweep.delta_f_set ? cfg.sweep.delta_f_hz
                            : std::vector<double>{1e6, 25e6};
  for (double delta_f : grid) {
    ExperimentConfig run = cfg;
    run.scenario = Scenario::los_scalar;
    run.band_ul = scalar_band(cfg.band_ul.center_freq_hz);
    run.band_dl = scalar_band(cfg.band_ul.center_freq_hz + delta_f);
    const CsiDataset ds = generate_dataset(run);
    auto [train_split, test_split] = split(ds, run.train_fraction, run.seed);
    const std::vector<CsiMatrix> truth = labels_of(test_split);

    auto emit = [&](const char* name, const std::vector<CsiMatrix>& used) {
      const BerCurve curve =
          ber_qpsk(truth, used, run.ber_snr_grid_db, run.ber_n_bits,
                   BerMode::equalize, run.seed);
      for (std::size_t i = 0; i < curve.ber.size(); ++i)
        os << fmt(delta_f) << "," << name << "," << fmt(curve.snr_points_db[i])
           << "," << fmt(curve.ber[i]) << "\n";
    };

    emit("perfect", truth);
    emit("analytical",
         predict_all(test_split, make_analytical_predictor(
                                     run.band_ul.center_freq_hz,
                                     run.band_dl.center_freq_hz, run.los_beta)));
    auto wiener = std::make_shared<WienerModel>(
        wiener_fit(train_split, run.wiener_sigma2, WienerVariant::global));
    emit("wiener_global",
         predict_all(test_split, make_wiener_predictor(std::move(wiener))));

    nn::CsiModel model = build_model("los", ds);
    nn::init_weights(model.net, run.train.seed);
    nn::train_csi_model(model, train_split, run.train);
    emit("nn", predict_all(test_split, make_nn_predictor(
                               std::make_shared<nn::CsiModel>(std::move(model)))));
  }
  return 0;
}

int sweep_nmse_vs_samples(const ExperimentConfig& cfg, std::ofstream& os,
                          const std::vector<double>& delta_grid) {
  os << "delta_f_hz,n_train,test_nmse\n";
  const std::vector<std::uint32_t> sizes =
      cfg.sweep.n_train_set
          ? cfg.sweep.n_train
          : std::vector<std::uint32_t>{100, 200, 400, 600, 1000, 2000, 4000};
  for (double delta_f : delta_grid) {
    ExperimentConfig run = cfg;
    run.scenario = Scenario::los_scalar;
    run.band_ul = scalar_band(cfg.band_ul.center_freq_hz);
    run.band_dl = scalar_band(cfg.band_ul.center_freq_hz + delta_f);
    const CsiDataset ds = generate_dataset(run);
    auto [pool, test_split] = split(ds, run.train_fraction, run.seed);
    const std::vector<CsiMatrix> truth = labels_of(test_split);

    for (std::uint32_t n_train : sizes) {
      if (n_train == 0 || n_train > pool.size())
        throw domain_error("sweep: n_train grid entry exceeds the training pool");
      CsiDataset subset = pool;
      subset.samples.assign(pool.samples.begin(),
                            pool.samples.begin() + n_train);
      nn::CsiModel model = build_model("los", ds);
      nn::init_weights(model.net, run.train.seed);
      nn::train_csi_model(model, subset, run.train);
      const auto predictions = predict_all(
          test_split,
          make_nn_predictor(std::make_shared<nn::CsiModel>(std::move(model))));
      os << fmt(delta_f) << "," << n_train << ","
         << fmt(nmse(predictions, truth)) << "\n";
    }
  }
  return 0;
}

int sweep_fig9(const ExperimentConfig& cfg, std::ofstream& os) {
  os << "m,snr_db,ber\n";
  const std::vector<std::uint32_t> m_grid =
      cfg.sweep.m_set ? cfg.sweep.m : std::vector<std::uint32_t>{1, 2, 4, 8};
  std::vector<double> snr_grid = cfg.ber_snr_grid_db;
  for (std::uint32_t m : m_grid) {
    // co-located array over the scalar LoS model: identical per-antenna
    // coefficients, so MRT shows the pure array gain
    const CsiDataset scalar = generate_los_scalar_dataset(
        std::min<std::size_t>(cfg.n_samples, 1000), cfg.radius_min_m,
        cfg.radius_max_m, cfg.band_ul.center_freq_hz,
        cfg.band_dl.center_freq_hz, cfg.los_beta, cfg.seed);
    std::vector<CsiMatrix> truth;
    truth.reserve(scalar.size());
    for (const CsiSample& s : scalar.samples) {
      CsiMatrix h;
      h.values.set_size(m, 1);
      h.values.fill(s.h_dl.values(0, 0));
      truth.push_back(std::move(h));
    }
    const BerCurve curve = ber_qpsk(truth, truth, snr_grid, cfg.ber_n_bits,
                                    BerMode::mrt_precode, cfg.seed);
    for (std::size_t i = 0; i < curve.ber.size(); ++i)
      os << m << "," << fmt(curve.snr_points_db[i]) << "," << fmt(curve.ber[i])
         << "\n";
  }
  return 0;
}

int sweep_sumrate_vs_antennas(const ExperimentConfig& cfg, std::ofstream& os) {
  os << "m,precoder,sum_rate_pred,sum_rate_bound\n";
  const std::vector<std::uint32_t> m_grid =
      cfg.sweep.m_set ? cfg.sweep.m : std::vector<std::uint32_t>{2, 4, 8};
  for (std::uint32_t m : m_grid) {
    ExperimentConfig run = cfg;
    run.scenario = Scenario::synthetic_env;
    run.env_antennas = m;
    if (!cfg.sweep.delta_f_set) {
      run.band_ul = ofdm_band(1.25e9);
      run.band_dl = ofdm_band(1.275e9);
    }
    const CsiDataset ds = generate_dataset(run);
    auto [train_split, test_split] = split(ds, run.train_fraction, run.seed);
    const Predictor predictor = resolve_predictor(run, ds, train_split);
    const double sigma2 = precoding_noise(run, test_split);
    for (Precoder pc : {Precoder::mrt, Precoder::zf}) {
      const auto [pred_report, bound_report] =
          evaluate_predictor(test_split, predictor, pc, run.precoding_users,
                             sigma2, run.seed, run.precoding_draws);
      os << m << "," << (pc == Precoder::mrt ? "mrt" : "zf") << ","
         << fmt(pred_report.sum_rate) << "," << fmt(bound_report.sum_rate)
         << "\n";
    }
  }
  return 0;
}

}  // namespace

int cmd_sweep(const ExperimentConfig& cfg, const std::string& kind_arg) {
  const std::string kind = kind_arg.empty() ? cfg.sweep_kind : kind_arg;
  if (kind.empty())
    throw config_error("sweep: no kind given (fig3|fig4|fig9|nmse_vs_samples|sumrate_vs_antennas)");
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path out = cfg.out_dir / ("sweep_" + kind + ".csv");
  std::ofstream os(out);

  int rc = 0;
  if (kind == "fig3") {
    rc = sweep_fig3(cfg, os);
  } else if (kind == "fig4") {
    rc = sweep_nmse_vs_samples(
        cfg, os,
        cfg.sweep.delta_f_set ? cfg.sweep.delta_f_hz
                              : std::vector<double>{15e6, 25e6});
  } else if (kind == "nmse_vs_samples") {
    rc = sweep_nmse_vs_samples(
        cfg, os,
        cfg.sweep.delta_f_set ? cfg.sweep.delta_f_hz
                              : std::vector<double>{25e6});
  } else if (kind == "fig9") {
    rc = sweep_fig9(cfg, os);
  } else if (kind == "sumrate_vs_antennas") {
    rc = sweep_sumrate_vs_antennas(cfg, os);
  } else {
    throw config_error("sweep: unknown kind '" + kind + "'");
  }
  std::cout << "sweep: " << out.string() << "\n";
  return rc;
}

}  // namespace fddpred::cli
