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
#include "qkb/cknn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qkb::cknn {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("euclidean_distance: lengths " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

CknnModel::CknnModel(data::Matrix train_features, std::vector<int> labels, std::size_t k,
                     std::size_t num_classes)
    : train_(std::move(train_features)), labels_(std::move(labels)), k_(k), num_classes_(num_classes) {
  if (train_.rows() == 0) throw std::invalid_argument("CKNN model has no training rows");
  if (train_.rows() != labels_.size()) throw std::invalid_argument("CKNN rows/labels mismatch");
  if (k_ < 1 || k_ > train_.rows()) {
    throw std::invalid_argument("k must lie in [1, " + std::to_string(train_.rows()) + "]");
  }
  for (int y : labels_) {
    if (y < 0 || static_cast<std::size_t>(y) >= num_classes_) {
      throw std::invalid_argument("label out of range");
    }
  }
}

CknnModel CknnModel::fit(const data::Dataset& train, std::size_t k) {
  return CknnModel(train.features, train.labels, k, train.num_classes());
}

std::vector<Neighbor> CknnModel::neighbors(std::span<const double> x) const {
  if (x.size() != train_.cols()) throw std::invalid_argument("CKNN query has wrong feature count");
  std::vector<Neighbor> all(train_.rows());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = {i, euclidean_distance(train_.row(i), x)};
  const auto mid = all.begin() + static_cast<std::ptrdiff_t>(k_);
  std::partial_sort(all.begin(), mid, all.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
  });
  all.erase(mid, all.end());
  return all;
}

Prediction CknnModel::classify(std::span<const double> x) const {
  const auto nn = neighbors(x);
  std::vector<int> votes(num_classes_, 0);
  std::vector<double> dist_sum(num_classes_, 0.0);
  for (const auto& n : nn) {
    ++votes[labels_[n.index]];
    dist_sum[labels_[n.index]] += n.distance;
  }
  int best = 0;
  for (int c = 1; c < static_cast<int>(num_classes_); ++c) {
    if (votes[c] > votes[best] || (votes[c] == votes[best] && votes[c] > 0 && dist_sum[c] < dist_sum[best])) {
      best = c;
    }
  }
  Prediction p{best, std::vector<double>(num_classes_, 0.0)};
  for (std::size_t c = 0; c < num_classes_; ++c) p.scores[c] = static_cast<double>(votes[c]) / nn.size();
  return p;
}

PredictionSet CknnModel::predict(const data::Matrix& test) const {
  PredictionSet out;
  for (std::size_t r = 0; r < test.rows(); ++r) out.push_back(classify(test.row(r)));
  return out;
}

}  // namespace qkb::cknn
