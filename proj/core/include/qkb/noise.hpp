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

// Single-qubit Pauli channels realized by Monte-Carlo trajectories over the
// pure-state simulator. Each call draws one Kraus branch per listed qubit;
// averaging |ψ><ψ| over many trajectories recovers the channel's action.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qkb/qsim.hpp"
#include "qkb/rng.hpp"

namespace qkb::noise {

enum class NoiseKind { BitFlip, PhaseFlip, BitPhaseFlip, MixedPauli };
enum class Pauli : std::uint8_t { I, X, Y, Z };

std::string_view to_string(NoiseKind kind);
NoiseKind parse_noise_kind(std::string_view text);
std::string_view to_string(Pauli p);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::MixedPauli;
  double p = 0.0;

  void validate() const;
};

/// Where the channel acts in the classifier pipeline.
enum class InjectionPoint { AfterEncoding, AfterFeatureMap, Both };

std::string_view to_string(InjectionPoint point);
InjectionPoint parse_injection_point(std::string_view text);

/// One Kraus-branch draw for a single qubit. MixedPauli picks X, Z, Y with
/// probability p/3 each.
Pauli sample_pauli(const NoiseSpec& spec, Rng& rng);

qsim::GateOp pauli_gate(Pauli p, int qubit);

struct AppliedError {
  std::uint64_t shot = 0;
  int qubit = 0;
  Pauli pauli = Pauli::I;
};

/// Applies the channel independently to every qubit in `qubits`, returning
/// the (still pure) trajectory state. Non-identity branches are appended to
/// `log` when given.
qsim::StateVector apply_noise(qsim::StateVector state, const NoiseSpec& spec,
                              std::span<const int> qubits, Rng& rng,
                              std::vector<AppliedError>* log = nullptr, std::uint64_t shot = 0);

struct TrajectoryBatch {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<AppliedError> errors;
};

/// Runs `shots` trajectories; shot s uses derive_seed(seed, s). `visit`
/// receives each trajectory state.
TrajectoryBatch run_trajectories(const qsim::StateVector& state, const NoiseSpec& spec,
                                 std::span<const int> qubits, std::uint64_t shots,
                                 std::uint64_t seed,
                                 const std::function<void(const qsim::StateVector&)>& visit = {});

/// Row-major 2x2 density matrix.
using Density2 = std::array<qsim::Complex, 4>;

Density2 pure_density(const qsim::StateVector& single_qubit);

/// Exact Kraus-sum action of the channel on |ψ><ψ| for a one-qubit state.
Density2 expected_density_effect(const NoiseSpec& spec, const qsim::StateVector& single_qubit);

}  // namespace qkb::noise
