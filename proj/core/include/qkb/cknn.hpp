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

// Brute-force Euclidean k-nearest-neighbours baseline.

#include <cstddef>
#include <span>
#include <vector>

#include "qkb/datapipe.hpp"
#include "qkb/prediction.hpp"

namespace qkb::cknn {

double euclidean_distance(std::span<const double> a, std::span<const double> b);

struct Neighbor {
  std::size_t index = 0;
  double distance = 0.0;
};

class CknnModel {
 public:
  CknnModel(data::Matrix train_features, std::vector<int> labels, std::size_t k,
            std::size_t num_classes);
  static CknnModel fit(const data::Dataset& train, std::size_t k);

  std::size_t k() const { return k_; }
  std::size_t num_classes() const { return num_classes_; }

  /// k nearest rows by ascending distance, ties by ascending row index.
  std::vector<Neighbor> neighbors(std::span<const double> x) const;

  /// Majority vote; ties go to the smaller summed distance, then the lower
  /// class index. Scores are vote shares.
  Prediction classify(std::span<const double> x) const;
  PredictionSet predict(const data::Matrix& test) const;

 private:
  data::Matrix train_;
  std::vector<int> labels_;
  std::size_t k_;
  std::size_t num_classes_;
};

}  // namespace qkb::cknn
