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
#include <numbers>
#include <span>
#include <vector>

#include "qkb/qsim.hpp"

namespace qkb::encoding {

enum class EntangleTopology { LinearChain };

struct EncodingConfig {
  /// Radians per unit of normalized feature. The default 2π maps x = 0 and
  /// x = 1 to the same single-qubit state up to global phase.
  double angle_scale = 2.0 * std::numbers::pi;
  /// IsingXY angle used by the feature map.
  double feature_map_angle = std::numbers::pi / 2.0;
  EntangleTopology topology = EntangleTopology::LinearChain;

  void validate() const;
};

struct EncodedPoint {
  qsim::StateVector state;
  std::size_t source_row = 0;
};

/// ⊗_i RZ(angle_scale * x_i) H |0>, one qubit per feature.
/// Every x_i must lie in [0, 1].
EncodedPoint encode_point(std::span<const double> x, const EncodingConfig& cfg,
                          std::size_t source_row = 0);

/// Gate list of the shared feature map U on d qubits: for each pair (i, i+1)
/// in ascending order, IsingXY(feature_map_angle) followed by CNOT(i, i+1).
std::vector<qsim::GateOp> feature_map_circuit(int num_qubits, const EncodingConfig& cfg);

EncodedPoint apply_feature_map(EncodedPoint p, const EncodingConfig& cfg);

/// ⊗_i RY(x_i) |0>. Used by the variational classifier.
qsim::StateVector angle_embed(std::span<const double> x, int n_qubits);

}  // namespace qkb::encoding
