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

#include <algorithm>
#include <numeric>

#include "qkb/metrics.hpp"
#include "qkb/rng.hpp"

namespace qkb::metrics {
namespace {

// Trapezoidal area under the ROC curve from sorted thresholds.
double trapezoid_auc(const std::vector<int>& pos, const std::vector<double>& score) {
  std::vector<std::size_t> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return score[a] > score[b]; });
  const double P = std::count(pos.begin(), pos.end(), 1);
  const double N = static_cast<double>(pos.size()) - P;
  double tp = 0, fp = 0, prev_tpr = 0, prev_fpr = 0, area = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && score[order[j]] == score[order[i]]) {
      (pos[order[j]] ? tp : fp) += 1;
      ++j;
    }
    const double tpr = tp / P, fpr = fp / N;
    area += (fpr - prev_fpr) * (tpr + prev_tpr) / 2;
    prev_tpr = tpr;
    prev_fpr = fpr;
    i = j;
  }
  return area;
}

PredictionSet from(const std::vector<int>& labels, int classes) {
  PredictionSet p;
  for (int y : labels) {
    std::vector<double> s(classes, 0.0);
    s[y] = 1.0;
    p.push_back({y, s});
  }
  return p;
}

TEST(Metrics, PerfectPredictions) {
  const std::vector<int> y{0, 1, 2, 1, 0, 2};
  const auto r = compute_metrics(y, from(y, 3), 3);
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_EQ(r.macro_f1, 1.0);
  ASSERT_TRUE(r.auc.has_value());
  EXPECT_EQ(*r.auc, 1.0);
}

TEST(Metrics, TwoClassHandExample) {
  // confusion [[50, 0], [10, 40]]
  std::vector<int> truth, pred;
  for (int i = 0; i < 50; ++i) truth.push_back(0), pred.push_back(0);
  for (int i = 0; i < 10; ++i) truth.push_back(1), pred.push_back(0);
  for (int i = 0; i < 40; ++i) truth.push_back(1), pred.push_back(1);
  const auto r = compute_metrics(truth, from(pred, 2), 2);
  EXPECT_EQ(r.confusion, (ConfusionMatrix{{50, 0}, {10, 40}}));
  EXPECT_DOUBLE_EQ(r.accuracy, 0.9);
  EXPECT_DOUBLE_EQ(r.per_class_recall[1], 0.8);
  EXPECT_DOUBLE_EQ(r.per_class_precision[0], 50.0 / 60.0);
  EXPECT_DOUBLE_EQ(r.macro_recall, 0.9);
}

TEST(Metrics, ConfusionRowsSumToClassCounts) {
  Rng rng = make_rng(2);
  std::vector<int> truth(300), pred(300);
  for (auto& v : truth) v = static_cast<int>(uniform_index(rng, 4));
  for (auto& v : pred) v = static_cast<int>(uniform_index(rng, 4));
  const auto r = compute_metrics(truth, from(pred, 4), 4);
  std::size_t total = 0, trace = 0;
  for (int c = 0; c < 4; ++c) {
    const auto row = std::accumulate(r.confusion[c].begin(), r.confusion[c].end(), std::size_t{0});
    EXPECT_EQ(row, static_cast<std::size_t>(std::count(truth.begin(), truth.end(), c)));
    total += row;
    trace += r.confusion[c][c];
  }
  EXPECT_EQ(total, 300u);
  EXPECT_DOUBLE_EQ(r.accuracy, static_cast<double>(trace) / 300.0);
  for (double m : {r.macro_precision, r.macro_recall, r.macro_f1, *r.auc}) {
    EXPECT_GE(m, 0.0);
    EXPECT_LE(m, 1.0);
  }
}

TEST(Metrics, AbsentClassWarns) {
  const std::vector<int> truth{0, 0, 1}, pred{0, 2, 1};
  const auto r = compute_metrics(truth, from(pred, 3), 3);
  EXPECT_EQ(r.per_class_recall[2], 0.0);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("class 2"), std::string::npos);
}

TEST(Auc, RankStatisticMatchesTrapezoid) {
  Rng rng = make_rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + uniform_index(rng, 100);
    std::vector<int> pos(n);
    std::vector<double> score(n);
    for (std::size_t i = 0; i < n; ++i) {
      pos[i] = uniform01(rng) < 0.4;
      // coarse grid so ties occur
      score[i] = std::round(10 * (uniform01(rng) + 0.3 * pos[i])) / 10;
    }
    if (std::count(pos.begin(), pos.end(), 1) == 0 || std::count(pos.begin(), pos.end(), 0) == 0) continue;
    EXPECT_NEAR(*binary_auc(pos, score), trapezoid_auc(pos, score), 1e-9) << trial;
  }
}

TEST(Auc, RandomScoresNearHalf) {
  Rng rng = make_rng(4);
  std::vector<int> pos(20000);
  std::vector<double> score(20000);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    pos[i] = uniform01(rng) < 0.5;
    score[i] = uniform01(rng);
  }
  EXPECT_NEAR(*binary_auc(pos, score), 0.5, 0.05);
}

TEST(Auc, UndefinedWithoutBothGroups) {
  const std::vector<int> pos{1, 1};
  const std::vector<double> score{0.1, 0.2};
  EXPECT_FALSE(binary_auc(pos, score).has_value());
}

TEST(Metrics, RejectsMismatchedInputs) {
  const std::vector<int> a{0, 1}, b{0};
  EXPECT_THROW(accuracy(a, b), std::invalid_argument);
  EXPECT_THROW(confusion_matrix(a, a, 1), std::invalid_argument);
}

}  // namespace
}  // namespace qkb::metrics
