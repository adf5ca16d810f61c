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

#include <gtest/gtest.h>

#include <sstream>

#include "qkb/evalbench.hpp"
#include "qkb/rng.hpp"

namespace qkb::bench {
namespace {

BenchConfig iris_config() {
  BenchConfig c;
  c.dataset = "iris";
  c.data_dir = QKB_TEST_DATA_DIR;
  return c;
}

// Two-class data with four informative columns, standing in for banknote.
data::Dataset synthetic(std::size_t n, std::uint64_t seed) {
  data::Dataset d;
  d.name = "banknote";
  d.feature_names = {"variance", "skewness", "curtosis", "entropy"};
  d.class_names = {"genuine", "forged"};
  Rng rng = make_rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const int y = static_cast<int>(i % 2);
    std::vector<double> row(4);
    for (std::size_t f = 0; f < 4; ++f) row[f] = 10 * uniform01(rng) + (y ? 6.0 : 0.0) * (f % 2 == 0);
    d.features.append_row(row);
    d.labels.push_back(y);
  }
  return d;
}

TEST(Config, JsonRoundTripAndUnknownKeys) {
  BenchConfig c = iris_config();
  c.k = 5;
  c.model = ModelKind::Qnn;
  c.distance = qknn::DistanceKind::Sampled;
  c.angle_scale = 3.0;
  const auto back = config_from_json(nlohmann::json::parse(to_json(c).dump()));
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_THROW(config_from_json({{"kk", 3}}), std::invalid_argument);
  EXPECT_EQ(config_from_json({{"k", 7}}, c).k, 7u);
}

TEST(Config, Validation) {
  BenchConfig c;
  c.k = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = BenchConfig{};
  c.dataset = "mnist";
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = BenchConfig{};
  c.angle_scale = -1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(PGrid, InclusiveAndSnapped) {
  const auto g = p_grid(0.0, 0.6, 0.1);
  ASSERT_EQ(g.size(), 7u);
  EXPECT_EQ(g[3], 0.3);
  EXPECT_EQ(g.back(), 0.6);
  EXPECT_THROW(p_grid(0.0, 0.6, 0.0), std::invalid_argument);
  EXPECT_THROW(p_grid(0.5, 0.2, 0.1), std::invalid_argument);
}

TEST(Prepare, NormalizationFittedOnTrainRowsOnly) {
  const auto raw = synthetic(200, 1);
  BenchConfig c;
  c.features = 2;
  const auto p = prepare(raw, c, 1.0);
  EXPECT_EQ(p.train.size() + p.test.size(), raw.size());
  EXPECT_EQ(p.train.num_features(), 2u);
  EXPECT_EQ(p.kept_columns, (std::vector<std::size_t>{0, 2}));
  for (std::size_t f = 0; f < 2; ++f) {
    const auto col = p.train.features.column(f);
    EXPECT_EQ(*std::min_element(col.begin(), col.end()), 0.0);
    EXPECT_EQ(*std::max_element(col.begin(), col.end()), 1.0);
  }
  for (std::size_t r = 0; r < p.test.size(); ++r) {
    for (std::size_t f = 0; f < 2; ++f) {
      EXPECT_GE(p.test.features(r, f), 0.0);
      EXPECT_LE(p.test.features(r, f), 1.0);
    }
  }
}

TEST(RunBenchmark, ReportIsBitwiseReproducible) {
  const auto raw = synthetic(120, 2);
  BenchConfig c;
  c.dataset = "banknote";
  for (auto m : {ModelKind::Qknn, ModelKind::Cknn, ModelKind::Qnn}) {
    c.model = m;
    c.epochs = 5;
    EXPECT_EQ(to_json(run_benchmark(raw, c)).dump(), to_json(run_benchmark(raw, c)).dump()) << to_string(m);
  }
}

TEST(RunBenchmark, ReportRecordsReplayInputs) {
  const auto r = run_benchmark(iris_config());
  const auto j = to_json(r);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["split"]["test_rows"].size(), 30u);
  EXPECT_TRUE(j["config"].contains("angle_scale"));
  EXPECT_TRUE(j["normalization"].contains("ranges"));
  EXPECT_EQ(j["metrics"]["confusion"].size(), 3u);
  EXPECT_EQ(config_from_json(j["config"]).seed, r.config.seed);
}

TEST(RunBenchmark, StageErrorsNameTheStage) {
  BenchConfig c = iris_config();
  c.data_dir = "/nonexistent";
  try {
    run_benchmark(c);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "load");
  }
  const auto raw = synthetic(40, 3);
  c.k = 1000;
  EXPECT_THROW(run_benchmark(raw, c), StageError);
}

TEST(Sweep, ZeroNoiseEqualsNoiselessAndRowsArePaired) {
  const auto raw = synthetic(100, 4);
  SweepConfig s;
  s.base.dataset = "banknote";
  s.p_values = {0.0, 0.3};
  s.trials = 3;
  s.mitigation = qknn::Mitigation::RepeatVote;
  s.threads = 2;
  const auto r = run_noise_sweep(raw, s);
  BenchConfig c = s.base;
  const double clean = run_benchmark(raw, c).metrics.accuracy;
  for (auto m : {qknn::Mitigation::None, qknn::Mitigation::RepeatVote}) {
    EXPECT_EQ(r.level(m, 0.0).mean, clean);
    EXPECT_EQ(r.level(m, 0.0).stddev, 0.0);
  }
  EXPECT_EQ(r.levels.size(), 4u);
  s.threads = 1;
  const auto serial = run_noise_sweep(raw, s);
  for (std::size_t i = 0; i < r.levels.size(); ++i) EXPECT_EQ(r.levels[i].accuracies, serial.levels[i].accuracies);
  std::ostringstream csv;
  write_sweep_csv(r, csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "mitigation,p,trials,seed,mean_accuracy,std_accuracy,min_accuracy,max_accuracy");
}

TEST(Sweep, MitigationAtLowNoise) {
  const auto raw = load_named_dataset("iris", QKB_TEST_DATA_DIR);
  SweepConfig s;
  s.base = iris_config();
  s.p_values = {0.1};
  s.trials = 20;
  s.mitigation = qknn::Mitigation::RepeatVote;
  auto r = run_noise_sweep(raw, s);
  const auto& none = r.level(qknn::Mitigation::None, 0.1);
  EXPECT_GE(r.level(qknn::Mitigation::RepeatVote, 0.1).mean, none.mean - none.stddev);

  // The bit-flip code protects against X errors only.
  s.mitigation = qknn::Mitigation::PhysicalCode;
  s.noise_kind = noise::NoiseKind::BitFlip;
  r = run_noise_sweep(raw, s);
  const auto& none_x = r.level(qknn::Mitigation::None, 0.1);
  EXPECT_GE(r.level(qknn::Mitigation::PhysicalCode, 0.1).mean, none_x.mean - none_x.stddev);
}

TEST(Sweep, MeanAccuracyFallsWithNoise) {
  const auto raw = load_named_dataset("iris", QKB_TEST_DATA_DIR);
  SweepConfig s;
  s.base = iris_config();
  s.p_values = p_grid(0.0, 0.6, 0.1);
  s.trials = 20;
  const auto r = run_noise_sweep(raw, s);
  // Non-increasing up to one inversion of at most two points.
  int inversions = 0;
  for (std::size_t i = 1; i < r.levels.size(); ++i) {
    const double rise = r.levels[i].mean - r.levels[i - 1].mean;
    if (rise > 0) {
      ++inversions;
      EXPECT_LE(rise, 0.02);
    }
  }
  EXPECT_LE(inversions, 1);
}

TEST(Compare, SharedSplitRow) {
  auto c = iris_config();
  c.epochs = 3;
  const auto raw = load_named_dataset("iris", c.data_dir);
  const auto row = compare(raw, c);
  c.model = ModelKind::Cknn;
  EXPECT_EQ(row.cknn, run_benchmark(raw, c).metrics.accuracy);
  std::ostringstream csv;
  write_compare_csv({row}, csv);
  EXPECT_EQ(csv.str().rfind("dataset,qknn,cknn,qnn\niris,", 0), 0u);
}

TEST(Paths, CanonicalFileNames) {
  EXPECT_EQ(dataset_path("wdbc", "/d").string(), "/d/wdbc.data");
  EXPECT_EQ(dataset_path("banknote", "/d").filename(), "data_banknote_authentication.txt");
  EXPECT_THROW(dataset_path("x", "/d"), std::invalid_argument);
}

}  // namespace
}  // namespace qkb::bench
