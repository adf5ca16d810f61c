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

// Variational quantum classifier baseline.
//
// Circuit: RY angle embedding of the features, then L entangling layers,
// then Pauli-Z readout on qubits 0..C-1. Binary problems read qubit 0 only
// and use P(class 1) = (1 + <Z_0>) / 2 with binary cross-entropy; C >= 3
// classes use softmax over <Z_0..Z_{C-1}> with categorical cross-entropy.
//
// Layer variants:
//   StronglyEntangling  per qubit RZ·RY·RZ (3 params), then a CNOT ring
//   RzRing              per qubit RZ (1 param), CNOT chain plus CNOT(n-1, 0)
//   RzChain             per qubit RZ (1 param), open CNOT chain i -> i+1
//
// RZ and CNOT are diagonal-times-permutation, so on any input the two RZ-only
// variants leave every computational-basis probability, and therefore every
// Z readout, independent of their parameters. Their gradients are zero.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qkb/datapipe.hpp"
#include "qkb/prediction.hpp"
#include "qkb/qsim.hpp"

namespace qkb::qnn {

enum class LayerKind { StronglyEntangling, RzRing, RzChain };

std::string_view to_string(LayerKind kind);
LayerKind parse_layer_kind(std::string_view text);

struct QnnArchitecture {
  int n_qubits = 4;
  int n_layers = 2;
  int n_classes = 2;
  LayerKind layer = LayerKind::StronglyEntangling;
  std::vector<double> params;  // [n_layers][n_qubits][params_per_qubit], row-major

  int params_per_qubit() const { return layer == LayerKind::StronglyEntangling ? 3 : 1; }
  std::size_t param_count() const;
  void validate() const;

  /// Parameters drawn uniformly from [-init_scale, init_scale].
  static QnnArchitecture initialize(int n_qubits, int n_layers, int n_classes, LayerKind layer,
                                    double init_scale, std::uint64_t seed);
};

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 50;
  std::uint64_t seed = 0;
  double init_scale = 0.01;

  void validate() const;
};

inline constexpr double kProbabilityClamp = 1e-12;

std::vector<qsim::GateOp> circuit(const QnnArchitecture& arch, std::span<const double> x);

/// Raw Z expectations on qubits 0..C-1 (C = n_classes).
std::vector<double> forward(const QnnArchitecture& arch, std::span<const double> x);

/// Class probabilities from raw outputs.
std::vector<double> output_probabilities(const QnnArchitecture& arch, std::span<const double> z);

std::vector<double> softmax(std::span<const double> z);
double bce_loss(std::span<const int> y, std::span<const double> y_hat);
double cce_loss(std::span<const std::vector<double>> y, std::span<const std::vector<double>> y_hat);

/// Mean loss over the batch (BCE for binary, CCE otherwise).
double loss(const QnnArchitecture& arch, const data::Matrix& x, std::span<const int> labels);

/// d loss / d params via the parameter-shift rule on every trainable
/// rotation, chained through the loss.
std::vector<double> gradient(const QnnArchitecture& arch, const data::Matrix& x,
                             std::span<const int> labels);

struct TrainResult {
  QnnArchitecture arch;
  std::vector<double> loss_history;  // initial loss, then loss after each epoch
};

/// Full-batch gradient descent. Throws TrainingError on a non-finite loss.
TrainResult train(QnnArchitecture arch, const data::Matrix& x, std::span<const int> labels,
                  const TrainConfig& cfg);

Prediction classify(const QnnArchitecture& arch, std::span<const double> x);
PredictionSet predict(const QnnArchitecture& arch, const data::Matrix& x);

nlohmann::json to_json(const QnnArchitecture& arch, const TrainConfig& cfg);
QnnArchitecture architecture_from_json(const nlohmann::json& j);

}  // namespace qkb::qnn
