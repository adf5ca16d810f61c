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

// Quantum k-nearest-neighbours classifier.
//
// Points are phase-encoded (H then RZ per feature), pushed through the shared
// IsingXY/CNOT feature map, and compared with the swap-test statistic
//
//     D(a, b) = P(ancilla = 0) = (1 + |<a|b>|^2) / 2.
//
// D grows with similarity, so neighbours are the training points with the
// *largest* D (equivalently the largest fidelity). Reading "nearest" as
// "smallest D" would select the least similar points.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qkb/datapipe.hpp"
#include "qkb/encoding.hpp"
#include "qkb/noise.hpp"
#include "qkb/prediction.hpp"
#include "qkb/qec.hpp"

namespace qkb::qknn {

enum class DistanceKind { Exact, Sampled };

struct DistanceMode {
  DistanceKind kind = DistanceKind::Exact;
  std::uint64_t shots = 100000;  // sampled mode only

  static DistanceMode exact() { return {DistanceKind::Exact, 0}; }
  static DistanceMode sampled(std::uint64_t shots) { return {DistanceKind::Sampled, shots}; }
};

std::string_view to_string(DistanceKind kind);
DistanceKind parse_distance_kind(std::string_view text);

/// Swap test on 2d + 1 qubits: qubit 0 is the ancilla, qubits 1..d hold
/// |a>, qubits d+1..2d hold |b>. Each controlled-SWAP is expanded into
/// CNOT(b, a) · Toffoli(anc, a, b) · CNOT(b, a).
std::vector<qsim::GateOp> swap_test_circuit(int d);

/// Runs the swap-test circuit and returns the exact ancilla-zero marginal.
double swap_test_p0(const qsim::StateVector& a, const qsim::StateVector& b);

/// (1 + |<a|b>|^2) / 2 from amplitudes, or the empirical ancilla-zero rate
/// over mode.shots single-ancilla measurements of the swap-test circuit.
double quantum_distance(const encoding::EncodedPoint& a, const encoding::EncodedPoint& b,
                        const DistanceMode& mode, std::uint64_t seed = 0);

struct NeighborSet {
  std::vector<std::size_t> indices;
  std::vector<double> distances;   // in [0.5, 1]
  std::vector<double> fidelities;  // descending, distance = (1 + fidelity) / 2
};

/// Ranks candidate fidelities: descending, ties by ascending index.
NeighborSet rank_neighbors(std::span<const double> fidelities, std::size_t k);

/// Majority vote over neighbour labels. Ties: larger summed fidelity, then
/// lower class index. Scores are fidelity-weighted vote shares.
Prediction vote(const NeighborSet& neighbors, std::span<const int> labels, std::size_t num_classes);

enum class Mitigation { None, RepeatVote, PhysicalCode };

std::string_view to_string(Mitigation m);
Mitigation parse_mitigation(std::string_view text);

struct NoiseOptions {
  noise::NoiseSpec spec;
  noise::InjectionPoint injection = noise::InjectionPoint::AfterFeatureMap;
  Mitigation mitigation = Mitigation::None;
  int code_length = 3;
  std::uint64_t seed = 0;
};

struct QknnOptions {
  std::size_t k = 3;
  encoding::EncodingConfig encoding;
  DistanceMode mode = DistanceMode::exact();
  bool use_feature_map = true;
  std::uint64_t seed = 0;  // drives sampled-mode shot streams
};

class QknnModel {
 public:
  /// `train` must already be normalized to [0, 1].
  static QknnModel fit(const data::Dataset& train, const QknnOptions& options);

  std::size_t size() const { return encoded_train_.size(); }
  std::size_t k() const { return options_.k; }
  std::size_t num_classes() const { return num_classes_; }
  const QknnOptions& options() const { return options_; }
  std::span<const encoding::EncodedPoint> encoded_train() const { return encoded_train_; }
  std::span<const int> labels() const { return labels_; }

  /// Encoding (+ feature map when enabled) of one normalized row.
  encoding::EncodedPoint encode(std::span<const double> x, std::size_t source_row = 0) const;

  NeighborSet find_neighbors(const encoding::EncodedPoint& test, std::uint64_t seed = 0) const;
  Prediction classify(const encoding::EncodedPoint& test, std::uint64_t seed = 0) const;

 private:
  QknnOptions options_;
  std::vector<encoding::EncodedPoint> encoded_train_;
  std::vector<int> labels_;
  std::size_t num_classes_ = 0;
};

/// End-to-end pipeline: encode, map, optional noise per trajectory, distance,
/// vote. Deterministic given options.seed and noise->seed.
PredictionSet fit_predict(const data::Dataset& train, const data::Dataset& test,
                          const QknnOptions& options,
                          const std::optional<NoiseOptions>& noise = std::nullopt);

}  // namespace qkb::qknn
