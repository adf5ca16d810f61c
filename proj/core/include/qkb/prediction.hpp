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
#include <vector>

namespace qkb {

/// A single classification: the predicted label and a per-class score
/// vector that sums to 1 (used for ROC/AUC).
struct Prediction {
  int label = 0;
  std::vector<double> scores;
};

struct PredictionSet {
  std::vector<int> labels;
  std::vector<std::vector<double>> scores;

  void push_back(Prediction p) {
    labels.push_back(p.label);
    scores.push_back(std::move(p.scores));
  }
  std::size_t size() const { return labels.size(); }
};

}  // namespace qkb
