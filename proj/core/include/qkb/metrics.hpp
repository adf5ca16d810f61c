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

#include <cstddef>
#include <optional>
#include <string>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "qkb/prediction.hpp"

namespace qkb::metrics {

/// confusion[true][predicted]
using ConfusionMatrix = std::vector<std::vector<std::size_t>>;

ConfusionMatrix confusion_matrix(std::span<const int> truth, std::span<const int> predicted, int n_classes);

double accuracy(std::span<const int> truth, std::span<const int> predicted);

/// Probability that a random positive outscores a random negative (ties
/// count half). Empty when either group is empty.
std::optional<double> binary_auc(std::span<const int> is_positive, std::span<const double> score);

struct EvalReport {
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::optional<double> auc;
  ConfusionMatrix confusion;
  std::vector<double> per_class_precision;
  std::vector<double> per_class_recall;
  std::vector<double> per_class_f1;
  std::vector<std::string> warnings;
};

/// Binary AUC uses the class-1 score; multiclass AUC is the unweighted mean
/// of one-vs-rest AUCs over classes that have both positives and negatives.
EvalReport compute_metrics(std::span<const int> truth, const PredictionSet& predictions, int n_classes);

nlohmann::json to_json(const EvalReport& report);

}  // namespace qkb::metrics
