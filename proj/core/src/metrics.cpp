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
#include "qkb/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qkb::metrics {

ConfusionMatrix confusion_matrix(std::span<const int> truth, std::span<const int> predicted, int n_classes) {
  if (truth.size() != predicted.size()) throw std::invalid_argument("confusion_matrix: length mismatch");
  if (n_classes < 1) throw std::invalid_argument("confusion_matrix: n_classes must be positive");
  ConfusionMatrix m(static_cast<std::size_t>(n_classes), std::vector<std::size_t>(n_classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= n_classes || predicted[i] < 0 || predicted[i] >= n_classes) {
      throw std::invalid_argument("confusion_matrix: label " + std::to_string(i) + " out of range");
    }
    ++m[truth[i]][predicted[i]];
  }
  return m;
}

double accuracy(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) throw std::invalid_argument("accuracy: length mismatch");
  if (truth.empty()) throw std::invalid_argument("accuracy: empty input");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += truth[i] == predicted[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::optional<double> binary_auc(std::span<const int> is_positive, std::span<const double> score) {
  if (is_positive.size() != score.size()) throw std::invalid_argument("binary_auc: length mismatch");
  const std::size_t n = score.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });

  // Average ranks (1-based) over tied groups.
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && score[order[j + 1]] == score[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  double pos = 0.0, rank_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_positive[i]) {
      pos += 1.0;
      rank_sum += rank[i];
    }
  }
  const double neg = static_cast<double>(n) - pos;
  if (pos == 0.0 || neg == 0.0) return std::nullopt;
  return (rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg);
}

EvalReport compute_metrics(std::span<const int> truth, const PredictionSet& predictions, int n_classes) {
  if (truth.size() != predictions.size()) throw std::invalid_argument("compute_metrics: length mismatch");
  EvalReport r;
  r.accuracy = accuracy(truth, predictions.labels);
  r.confusion = confusion_matrix(truth, predictions.labels, n_classes);

  const auto C = static_cast<std::size_t>(n_classes);
  r.per_class_precision.assign(C, 0.0);
  r.per_class_recall.assign(C, 0.0);
  r.per_class_f1.assign(C, 0.0);
  for (std::size_t c = 0; c < C; ++c) {
    std::size_t tp = r.confusion[c][c], col = 0, row = 0;
    for (std::size_t k = 0; k < C; ++k) {
      col += r.confusion[k][c];
      row += r.confusion[c][k];
    }
    const double p = col ? static_cast<double>(tp) / static_cast<double>(col) : 0.0;
    const double rc = row ? static_cast<double>(tp) / static_cast<double>(row) : 0.0;
    r.per_class_precision[c] = p;
    r.per_class_recall[c] = rc;
    r.per_class_f1[c] = p + rc > 0.0 ? 2.0 * p * rc / (p + rc) : 0.0;
    if (row == 0) r.warnings.push_back("class " + std::to_string(c) + " absent from true labels");
  }
  auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); };
  r.macro_precision = mean(r.per_class_precision);
  r.macro_recall = mean(r.per_class_recall);
  r.macro_f1 = mean(r.per_class_f1);

  for (const auto& s : predictions.scores) {
    if (s.size() != C) throw std::invalid_argument("compute_metrics: score vector has wrong length");
  }
  std::vector<int> positive(truth.size());
  std::vector<double> score(truth.size());
  auto one_vs_rest = [&](std::size_t c) {
    for (std::size_t i = 0; i < truth.size(); ++i) {
      positive[i] = truth[i] == static_cast<int>(c);
      score[i] = predictions.scores[i][c];
    }
    return binary_auc(positive, score);
  };
  if (C == 2) {
    r.auc = one_vs_rest(1);
  } else {
    double total = 0.0;
    int defined = 0;
    for (std::size_t c = 0; c < C; ++c) {
      if (auto a = one_vs_rest(c)) {
        total += *a;
        ++defined;
      }
    }
    if (defined > 0) r.auc = total / defined;
  }
  return r;
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json j = {
      {"accuracy", report.accuracy},
      {"macro_precision", report.macro_precision},
      {"macro_recall", report.macro_recall},
      {"macro_f1", report.macro_f1},
      {"confusion", report.confusion},
      {"per_class_precision", report.per_class_precision},
      {"per_class_recall", report.per_class_recall},
      {"per_class_f1", report.per_class_f1},
      {"warnings", report.warnings},
  };
  j["auc"] = report.auc ? nlohmann::json(*report.auc) : nlohmann::json(nullptr);
  return j;
}

}  // namespace qkb::metrics
