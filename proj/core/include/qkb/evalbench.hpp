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
#pragma once

// Experiment orchestration: one seeded benchmark run, the noise sweep, and
// the three-model comparison. Everything in a report is derived from the
// config and seed; no wall-clock values are recorded.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qkb/chi2.hpp"
#include "qkb/datapipe.hpp"
#include "qkb/metrics.hpp"
#include "qkb/noise.hpp"
#include "qkb/qknn.hpp"
#include "qkb/qnn.hpp"

namespace qkb::bench {

/// Failure inside a named pipeline stage (load, split, normalize, select,
/// fit, predict, metrics).
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

enum class ModelKind { Qknn, Cknn, Qnn };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

struct BenchConfig {
  std::string dataset = "iris";
  std::string data_dir;  // empty: the built-in default data directory
  ModelKind model = ModelKind::Qknn;
  std::size_t k = 3;
  std::uint64_t seed = 42;
  double test_fraction = 0.2;
  int features = 4;  // top-k by chi-square, computed on the training rows
  int bins = 10;
  double angle_scale = 6.283185307179586;
  double feature_map_angle = 1.5707963267948966;
  bool feature_map = true;
  qknn::DistanceKind distance = qknn::DistanceKind::Exact;
  std::uint64_t shots = 100000;
  int qnn_layers = 2;
  qnn::LayerKind qnn_layer = qnn::LayerKind::StronglyEntangling;
  double learning_rate = 0.1;
  int epochs = 50;
  double init_scale = 0.01;

  void validate() const;
};

nlohmann::json to_json(const BenchConfig& cfg);
/// Reads any subset of the keys written by to_json on top of base.
/// Unknown keys are rejected.
BenchConfig config_from_json(const nlohmann::json& j, BenchConfig base = {});

/// Resolves <dir>/<canonical file name>; dir defaults to the build-time data
/// directory, overridable with QKB_DATA_DIR in the environment.
std::filesystem::path dataset_path(std::string_view dataset, const std::string& data_dir);
data::Dataset load_named_dataset(std::string_view dataset, const std::string& data_dir);

/// Split, train-fitted normalization and train-side feature selection,
/// shared by every model so comparisons isolate the classifier.
struct PreparedData {
  data::Dataset train;
  data::Dataset test;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  data::Normalizer normalizer;
  data::SelectionResult selection;
  std::vector<std::size_t> kept_columns;  // indices into the raw dataset, ascending
  std::vector<std::string> warnings;
};

/// Features are scaled to [0, upper].
PreparedData prepare(const data::Dataset& raw, const BenchConfig& cfg, double upper);

struct BenchReport {
  BenchConfig config;
  PreparedData prepared;
  PredictionSet predictions;
  metrics::EvalReport metrics;
  std::optional<nlohmann::json> qnn_model;
  std::vector<double> loss_history;
};

BenchReport run_benchmark(const data::Dataset& raw, const BenchConfig& cfg);
BenchReport run_benchmark(const BenchConfig& cfg);
nlohmann::json to_json(const BenchReport& report);

struct SweepConfig {
  BenchConfig base;  // model is forced to QKNN
  std::vector<double> p_values;
  int trials = 20;
  qknn::Mitigation mitigation = qknn::Mitigation::None;
  noise::NoiseKind noise_kind = noise::NoiseKind::MixedPauli;
  noise::InjectionPoint injection = noise::InjectionPoint::AfterFeatureMap;
  int code_length = 3;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

/// p_start, p_start + step, ... up to p_stop inclusive (with 1e-9 slack).
std::vector<double> p_grid(double start, double stop, double step);

struct SweepLevel {
  qknn::Mitigation mitigation = qknn::Mitigation::None;
  double p = 0.0;
  std::vector<double> accuracies;  // one per trial
  double mean = 0.0;
  double stddev = 0.0;             // sample standard deviation (0 for one trial)
};

struct SweepResult {
  std::vector<double> noise_levels;
  int trials = 0;
  qknn::Mitigation mitigation_mode = qknn::Mitigation::None;
  std::uint64_t seed = 0;
  std::vector<SweepLevel> levels;  // unmitigated rows first, then mitigated rows

  const SweepLevel& level(qknn::Mitigation m, double p) const;
};

/// Trial t uses noise seed derive_seed(seed, t) at every p and for every
/// mitigation mode, so rows are paired.
SweepResult run_noise_sweep(const data::Dataset& raw, const SweepConfig& cfg);
void write_sweep_csv(const SweepResult& result, std::ostream& out);

struct CompareRow {
  std::string dataset;
  double qknn = 0.0;
  double cknn = 0.0;
  double qnn = 0.0;
};

CompareRow compare(const data::Dataset& raw, const BenchConfig& cfg);
void write_compare_csv(const std::vector<CompareRow>& rows, std::ostream& out);

nlohmann::json to_json(const data::SelectionResult& sel, const data::Dataset& d);

}  // namespace qkb::bench
