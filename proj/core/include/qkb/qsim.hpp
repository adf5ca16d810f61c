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

// Gate-level pure-state simulator.
//
// Basis ordering: qubit 0 is the most significant bit of the basis index.
// On n qubits, qubit q corresponds to bit (n - 1 - q), so |q0 q1 ... q_{n-1}>
// reads left-to-right as the binary index. Every kernel, oracle and test in
// this project uses this convention.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qkb/rng.hpp"

namespace qkb::qsim {

using Complex = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 14;
inline constexpr double kNormTolerance = 1e-10;

enum class GateKind { H, X, Y, Z, S, T, RZ, RY, CNOT, SWAP, Toffoli, IsingXY };

inline constexpr GateKind kAllGateKinds[] = {
    GateKind::H,  GateKind::X,    GateKind::Y,    GateKind::Z,       GateKind::S,      GateKind::T,
    GateKind::RZ, GateKind::RY,   GateKind::CNOT, GateKind::SWAP,    GateKind::Toffoli, GateKind::IsingXY};

int arity(GateKind kind);
bool is_parametric(GateKind kind);
std::string_view gate_name(GateKind kind);

/// A unitary placed on specific qubits. For controlled gates the controls
/// come first: CNOT{control, target}, Toffoli{c1, c2, target}.
struct GateOp {
  GateKind kind;
  std::vector<int> targets;
  double angle = 0.0;
};

namespace gates {
GateOp h(int q);
GateOp x(int q);
GateOp y(int q);
GateOp z(int q);
GateOp s(int q);
GateOp t(int q);
GateOp rz(int q, double theta);
GateOp ry(int q, double theta);
GateOp cnot(int control, int target);
GateOp swap(int a, int b);
GateOp toffoli(int c1, int c2, int target);
/// exp(-i theta/2 (X⊗X + Y⊗Y)).
GateOp ising_xy(int a, int b, double theta);
}  // namespace gates

/// Row-major local unitary of dimension 2^arity; targets[0] is the most
/// significant bit of the local index.
std::vector<Complex> gate_matrix(const GateOp& gate);

class StateVector {
 public:
  /// Validates length == 2^n and unit norm (within kNormTolerance).
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex amplitude(std::size_t index) const { return amps_.at(index); }
  double norm_squared() const;

  /// In-place gate application (stride kernels, no dense matrices).
  void apply(const GateOp& gate);

  bool operator==(const StateVector&) const = default;

 private:
  StateVector(int num_qubits, std::vector<Complex> amps)
      : num_qubits_(num_qubits), amps_(std::move(amps)) {}

  friend StateVector new_zero_state(int, int);
  friend StateVector basis_state(int, std::uint64_t, int);
  friend StateVector tensor_product(const StateVector&, const StateVector&, int);

  int num_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// |0...0> on n qubits. Throws ResourceError when n > max_qubits.
StateVector new_zero_state(int n, int max_qubits = kDefaultMaxQubits);
StateVector basis_state(int n, std::uint64_t index, int max_qubits = kDefaultMaxQubits);

/// |a>⊗|b>: a occupies qubits [0, a.n), b occupies [a.n, a.n + b.n).
StateVector tensor_product(const StateVector& a, const StateVector& b,
                           int max_qubits = kDefaultMaxQubits);

StateVector apply_gate(StateVector state, const GateOp& gate);
StateVector apply_circuit(StateVector state, std::span<const GateOp> circuit);

/// Throws std::invalid_argument if the gate cannot act on an n-qubit state.
void validate_gate(const GateOp& gate, int num_qubits);

/// Σ conj(a_i) b_i.
Complex inner_product(const StateVector& a, const StateVector& b);
/// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

double z_expectation(const StateVector& state, int qubit);
/// Marginal probability that `qubit` reads 0.
double probability_zero(const StateVector& state, int qubit);
std::vector<double> probabilities(const StateVector& state);

struct MeasurementSample {
  std::uint64_t basis_index = 0;
  std::uint64_t shot_count = 0;
  bool operator==(const MeasurementSample&) const = default;
};

/// i.i.d. Born-rule draws, in draw order.
std::vector<std::uint64_t> sample_shots(const StateVector& state, std::uint64_t shots, Rng& rng);

/// Histogram of `shots` Born-rule draws, ascending basis index, zero counts omitted.
std::vector<MeasurementSample> sample_basis(const StateVector& state, std::uint64_t shots,
                                            std::uint64_t seed);

}  // namespace qkb::qsim
