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
#include "qkb/encoding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qkb::encoding {

void EncodingConfig::validate() const {
  if (!(angle_scale > 0.0) || !std::isfinite(angle_scale)) {
    throw std::invalid_argument("angle_scale must be a positive finite number");
  }
  if (!std::isfinite(feature_map_angle)) {
    throw std::invalid_argument("feature_map_angle must be finite");
  }
}

EncodedPoint encode_point(std::span<const double> x, const EncodingConfig& cfg,
                          std::size_t source_row) {
  cfg.validate();
  if (x.empty()) throw std::invalid_argument("cannot encode an empty feature vector");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
      throw std::invalid_argument("feature " + std::to_string(i) + " = " + std::to_string(x[i]) +
                                  " is outside [0, 1]");
    }
  }
  const int d = static_cast<int>(x.size());
  auto state = qsim::new_zero_state(d);
  for (int q = 0; q < d; ++q) {
    state.apply(qsim::gates::h(q));
    state.apply(qsim::gates::rz(q, cfg.angle_scale * x[q]));
  }
  return {std::move(state), source_row};
}

std::vector<qsim::GateOp> feature_map_circuit(int num_qubits, const EncodingConfig& cfg) {
  std::vector<qsim::GateOp> ops;
  for (int i = 0; i + 1 < num_qubits; ++i) {
    ops.push_back(qsim::gates::ising_xy(i, i + 1, cfg.feature_map_angle));
    ops.push_back(qsim::gates::cnot(i, i + 1));
  }
  return ops;
}

EncodedPoint apply_feature_map(EncodedPoint p, const EncodingConfig& cfg) {
  cfg.validate();
  const auto ops = feature_map_circuit(p.state.num_qubits(), cfg);
  for (const auto& g : ops) p.state.apply(g);
  return p;
}

qsim::StateVector angle_embed(std::span<const double> x, int n_qubits) {
  if (static_cast<int>(x.size()) != n_qubits) {
    throw std::invalid_argument("angle_embed: " + std::to_string(x.size()) +
                                " features for " + std::to_string(n_qubits) + " qubits");
  }
  auto state = qsim::new_zero_state(n_qubits);
  for (int q = 0; q < n_qubits; ++q) state.apply(qsim::gates::ry(q, x[q]));
  return state;
}

}  // namespace qkb::encoding
