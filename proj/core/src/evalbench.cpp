// Copyright 2026 The qkb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qkb/evalbench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "qkb/cknn.hpp"
#include "qkb/rng.hpp"

#ifndef QKB_DEFAULT_DATA_DIR
#define QKB_DEFAULT_DATA_DIR "data"
#endif

namespace qkb::bench {
namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

qknn::QknnOptions qknn_options(const BenchConfig& cfg) {
  qknn::QknnOptions o;
  o.k = cfg.k;
  o.encoding.angle_scale = cfg.angle_scale;
  o.encoding.feature_map_angle = cfg.feature_map_angle;
  o.mode = cfg.distance == qknn::DistanceKind::Exact ? qknn::DistanceMode::exact()
                                                      : qknn::DistanceMode::sampled(cfg.shots);
  o.use_feature_map = cfg.feature_map;
  o.seed = derive_seed(cfg.seed, 0x716b6e6eULL);
  return o;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Qknn: return "qknn";
    case ModelKind::Cknn: return "cknn";
    case ModelKind::Qnn: return "qnn";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  for (auto m : {ModelKind::Qknn, ModelKind::Cknn, ModelKind::Qnn}) {
    if (text == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown model '" + std::string(text) + "' (expected qknn, cknn or qnn)");
}

void BenchConfig::validate() const {
  (void)data::parse_format(dataset);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw std::invalid_argument("test fraction must lie in (0, 1)");
  if (features < 1) throw std::invalid_argument("features must be at least 1");
  if (bins < 2) throw std::invalid_argument("bins must be at least 2");
  if (!(angle_scale > 0.0) || !std::isfinite(angle_scale)) throw std::invalid_argument("angle scale must be positive");
  if (!std::isfinite(feature_map_angle)) throw std::invalid_argument("feature map angle must be finite");
  if (distance == qknn::DistanceKind::Sampled && shots == 0) throw std::invalid_argument("shots must be positive");
  if (qnn_layers < 1) throw std::invalid_argument("QNN layers must be at least 1");
  qnn::TrainConfig{learning_rate, epochs, seed, init_scale}.validate();
}

nlohmann::json to_json(const BenchConfig& c) {
  return {
      {"dataset", c.dataset},
      {"data_dir", c.data_dir},
      {"model", std::string(to_string(c.model))},
      {"k", c.k},
      {"seed", c.seed},
      {"test_fraction", c.test_fraction},
      {"features", c.features},
      {"bins", c.bins},
      {"angle_scale", c.angle_scale},
      {"feature_map_angle", c.feature_map_angle},
      {"feature_map", c.feature_map},
      {"distance", std::string(qknn::to_string(c.distance))},
      {"shots", c.shots},
      {"qnn_layers", c.qnn_layers},
      {"qnn_layer", std::string(qnn::to_string(c.qnn_layer))},
      {"learning_rate", c.learning_rate},
      {"epochs", c.epochs},
      {"init_scale", c.init_scale},
  };
}

BenchConfig config_from_json(const nlohmann::json& j, BenchConfig c) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "dataset") c.dataset = v.get<std::string>();
    else if (key == "data_dir") c.data_dir = v.get<std::string>();
    else if (key == "model") c.model = parse_model_kind(v.get<std::string>());
    else if (key == "k") c.k = v.get<std::size_t>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "test_fraction") c.test_fraction = v.get<double>();
    else if (key == "features") c.features = v.get<int>();
    else if (key == "bins") c.bins = v.get<int>();
    else if (key == "angle_scale") c.angle_scale = v.get<double>();
    else if (key == "feature_map_angle") c.feature_map_angle = v.get<double>();
    else if (key == "feature_map") c.feature_map = v.get<bool>();
    else if (key == "distance") c.distance = qknn::parse_distance_kind(v.get<std::string>());
    else if (key == "shots") c.shots = v.get<std::uint64_t>();
    else if (key == "qnn_layers") c.qnn_layers = v.get<int>();
    else if (key == "qnn_layer") c.qnn_layer = qnn::parse_layer_kind(v.get<std::string>());
    else if (key == "learning_rate") c.learning_rate = v.get<double>();
    else if (key == "epochs") c.epochs = v.get<int>();
    else if (key == "init_scale") c.init_scale = v.get<double>();
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
  return c;
}

std::filesystem::path dataset_path(std::string_view dataset, const std::string& data_dir) {
  const auto format = data::parse_format(dataset);
  std::filesystem::path dir = data_dir;
  if (dir.empty()) {
    const char* env = std::getenv("QKB_DATA_DIR");
    dir = env && *env ? env : QKB_DEFAULT_DATA_DIR;
  }
  return dir / data::default_file_name(format);
}

data::Dataset load_named_dataset(std::string_view dataset, const std::string& data_dir) {
  return stage("load", [&] { return data::load_dataset(dataset_path(dataset, data_dir), data::parse_format(dataset)); });
}

PreparedData prepare(const data::Dataset& raw, const BenchConfig& cfg, double upper) {
  PreparedData out;
  auto split = stage("split", [&] { return data::stratified_split(raw, cfg.test_fraction, cfg.seed); });
  out.train_rows = std::move(split.train_rows);
  out.test_rows = std::move(split.test_rows);

  data::Dataset normalized = stage("normalize", [&] {
    out.normalizer = data::fit_min_max(raw, out.train_rows, &out.warnings, upper);
    return out.normalizer.transform(raw);
  });
  data::Dataset train = normalized.subset(out.train_rows);
  data::Dataset test = normalized.subset(out.test_rows);

  stage("select", [&] {
    out.selection = data::chi_square_select(train, cfg.bins, data::TopK{static_cast<std::size_t>(cfg.features)});
    std::vector<std::size_t> cols = out.selection.kept_indices;
    std::sort(cols.begin(), cols.end());
    for (auto c : cols) out.kept_columns.push_back(out.normalizer.kept_columns[c]);
    out.train = train.select_features(cols);
    out.test = test.select_features(cols);
    return 0;
  });
  return out;
}

BenchReport run_benchmark(const data::Dataset& raw, const BenchConfig& cfg) {
  cfg.validate();
  BenchReport r;
  r.config = cfg;
  const double upper = cfg.model == ModelKind::Qnn ? std::acos(-1.0) : 1.0;
  r.prepared = prepare(raw, cfg, upper);
  const auto& train = r.prepared.train;
  const auto& test = r.prepared.test;
  if (cfg.k > train.size()) throw StageError("fit", "k exceeds the training-set size");

  switch (cfg.model) {
    case ModelKind::Qknn:
      r.predictions = stage("predict", [&] { return qknn::fit_predict(train, test, qknn_options(cfg)); });
      break;
    case ModelKind::Cknn: {
      const auto model = stage("fit", [&] { return cknn::CknnModel::fit(train, cfg.k); });
      r.predictions = stage("predict", [&] { return model.predict(test.features); });
      break;
    }
    case ModelKind::Qnn: {
      const qnn::TrainConfig tc{cfg.learning_rate, cfg.epochs, cfg.seed, cfg.init_scale};
      auto trained = stage("fit", [&] {
        auto arch = qnn::QnnArchitecture::initialize(static_cast<int>(train.num_features()), cfg.qnn_layers,
                                                     static_cast<int>(train.num_classes()), cfg.qnn_layer,
                                                     cfg.init_scale, derive_seed(cfg.seed, 0x716e6eULL));
        return qnn::train(std::move(arch), train.features, train.labels, tc);
      });
      r.predictions = stage("predict", [&] { return qnn::predict(trained.arch, test.features); });
      r.qnn_model = qnn::to_json(trained.arch, tc);
      r.loss_history = std::move(trained.loss_history);
      break;
    }
  }
  r.metrics = stage("metrics", [&] {
    return metrics::compute_metrics(test.labels, r.predictions, static_cast<int>(test.num_classes()));
  });
  return r;
}

BenchReport run_benchmark(const BenchConfig& cfg) {
  cfg.validate();
  return run_benchmark(load_named_dataset(cfg.dataset, cfg.data_dir), cfg);
}

nlohmann::json to_json(const data::SelectionResult& sel, const data::Dataset& d) {
  nlohmann::json features = nlohmann::json::array();
  for (std::size_t f = 0; f < sel.chi2_scores.size(); ++f) {
    features.push_back({
        {"index", f},
        {"name", f < d.feature_names.size() ? d.feature_names[f] : std::to_string(f)},
        {"chi2", sel.chi2_scores[f]},
        {"p_value", sel.p_values[f]},
        {"dof", sel.degrees_of_freedom[f]},
    });
  }
  return {{"kept_indices", sel.kept_indices}, {"features", features}, {"notes", sel.notes}};
}

nlohmann::json to_json(const BenchReport& r) {
  const auto& p = r.prepared;
  std::vector<std::string> kept_names;
  for (const auto& n : p.train.feature_names) kept_names.push_back(n);
  nlohmann::json j = {
      {"config", to_json(r.config)},
      {"seed", r.config.seed},
      {"dataset", r.config.dataset},
      {"model", std::string(to_string(r.config.model))},
      {"split", {{"train_rows", p.train_rows}, {"test_rows", p.test_rows}}},
      {"normalization", p.normalizer.to_json()},
      {"kept_columns", p.kept_columns},
      {"kept_feature_names", kept_names},
      {"chi2", {{"kept_indices", p.selection.kept_indices},
                {"scores", p.selection.chi2_scores},
                {"p_values", p.selection.p_values},
                {"dof", p.selection.degrees_of_freedom},
                {"notes", p.selection.notes}}},
      {"warnings", p.warnings},
      {"metrics", metrics::to_json(r.metrics)},
      {"predictions", {{"truth", p.test.labels},
                       {"labels", r.predictions.labels},
                       {"scores", r.predictions.scores}}},
  };
  if (r.qnn_model) {
    j["qnn"] = *r.qnn_model;
    j["qnn"]["loss_history"] = r.loss_history;
  }
  return j;
}

void SweepConfig::validate() const {
  base.validate();
  if (p_values.empty()) throw std::invalid_argument("sweep needs at least one p value");
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sweep p values must lie in [0, 1]");
  }
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (mitigation != qknn::Mitigation::None) (void)qec::RepetitionCode(code_length);
}

std::vector<double> p_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("p step must be positive");
  if (!(start >= 0.0 && stop <= 1.0 && start <= stop)) {
    throw std::invalid_argument("p range must satisfy 0 <= start <= stop <= 1");
  }
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double p = start + static_cast<double>(i) * step;
    if (p > stop + 1e-9) break;
    // Snap to the step grid so 0.30000000000000004 prints and compares as 0.3.
    out.push_back(std::round(std::min(p, stop) * 1e9) / 1e9);
  }
  return out;
}

const SweepLevel& SweepResult::level(qknn::Mitigation m, double p) const {
  for (const auto& l : levels) {
    if (l.mitigation == m && std::abs(l.p - p) < 1e-12) return l;
  }
  throw std::out_of_range("no sweep level for mitigation " + std::string(qknn::to_string(m)) + " at p=" +
                          std::to_string(p));
}

SweepResult run_noise_sweep(const data::Dataset& raw, const SweepConfig& cfg_in) {
  SweepConfig cfg = cfg_in;
  cfg.base.model = ModelKind::Qknn;
  cfg.validate();
  const PreparedData prep = prepare(raw, cfg.base, 1.0);
  const auto opts = qknn_options(cfg.base);

  std::vector<qknn::Mitigation> modes{qknn::Mitigation::None};
  if (cfg.mitigation != qknn::Mitigation::None) modes.push_back(cfg.mitigation);

  SweepResult res;
  res.noise_levels = cfg.p_values;
  res.trials = cfg.trials;
  res.mitigation_mode = cfg.mitigation;
  res.seed = cfg.base.seed;
  for (auto m : modes) {
    for (double p : cfg.p_values) res.levels.push_back({m, p, std::vector<double>(cfg.trials, 0.0), 0.0, 0.0});
  }

  const std::size_t jobs = res.levels.size() * static_cast<std::size_t>(cfg.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      auto& lvl = res.levels[job / cfg.trials];
      const std::size_t t = job % cfg.trials;
      try {
        qknn::NoiseOptions n;
        n.spec = {cfg.noise_kind, lvl.p};
        n.injection = cfg.injection;
        n.mitigation = lvl.mitigation;
        n.code_length = cfg.code_length;
        n.seed = derive_seed(cfg.base.seed, t);
        const auto preds = qknn::fit_predict(prep.train, prep.test, opts, n);
        lvl.accuracies[t] = metrics::accuracy(prep.test.labels, preds.labels);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned n_threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, jobs));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError("sweep", e.what());
    }
  }

  for (auto& lvl : res.levels) {
    const double n = static_cast<double>(lvl.accuracies.size());
    // Offset from the first trial so identical trials give an exact mean.
    const double base = lvl.accuracies.front();
    double offset = 0.0;
    for (double a : lvl.accuracies) offset += a - base;
    lvl.mean = base + offset / n;
    double ss = 0.0;
    for (double a : lvl.accuracies) ss += (a - lvl.mean) * (a - lvl.mean);
    lvl.stddev = lvl.accuracies.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  }
  return res;
}

void write_sweep_csv(const SweepResult& r, std::ostream& out) {
  out << "mitigation,p,trials,seed,mean_accuracy,std_accuracy,min_accuracy,max_accuracy\n";
  for (const auto& l : r.levels) {
    const auto [lo, hi] = std::minmax_element(l.accuracies.begin(), l.accuracies.end());
    out << qknn::to_string(l.mitigation) << ',' << fmt(l.p, "%.6g") << ',' << r.trials << ',' << r.seed << ','
        << fmt(l.mean, "%.6f") << ',' << fmt(l.stddev, "%.6f") << ',' << fmt(*lo, "%.6f") << ','
        << fmt(*hi, "%.6f") << '\n';
  }
}

CompareRow compare(const data::Dataset& raw, const BenchConfig& cfg) {
  CompareRow row{cfg.dataset, 0.0, 0.0, 0.0};
  BenchConfig c = cfg;
  c.model = ModelKind::Qknn;
  row.qknn = run_benchmark(raw, c).metrics.accuracy;
  c.model = ModelKind::Cknn;
  row.cknn = run_benchmark(raw, c).metrics.accuracy;
  c.model = ModelKind::Qnn;
  row.qnn = run_benchmark(raw, c).metrics.accuracy;
  return row;
}

void write_compare_csv(const std::vector<CompareRow>& rows, std::ostream& out) {
  out << "dataset,qknn,cknn,qnn\n";
  for (const auto& r : rows) {
    out << r.dataset << ',' << fmt(r.qknn, "%.4f") << ',' << fmt(r.cknn, "%.4f") << ',' << fmt(r.qnn, "%.4f")
        << '\n';
  }
}

}  // namespace qkb::bench
