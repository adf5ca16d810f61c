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
#include "qkb/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qkb/common.hpp"

namespace qkb::qsim {
namespace {

constexpr Complex kI{0.0, 1.0};

std::uint64_t bit_of(int num_qubits, int qubit) {
  return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

void check_size(int n, int max_qubits) {
  if (n <= 0) {
    throw std::invalid_argument("qubit count must be positive, got " + std::to_string(n));
  }
  if (n > max_qubits) {
    const double bytes = std::ldexp(static_cast<double>(sizeof(Complex)), n);
    throw ResourceError("state of " + std::to_string(n) + " qubits needs 2^" + std::to_string(n) +
                        " amplitudes (" + std::to_string(static_cast<std::uint64_t>(bytes)) +
                        " bytes); configured maximum is " + std::to_string(max_qubits) + " qubits");
  }
}

// Generic single-qubit kernel over amplitude pairs (i, i + stride).
void apply_1q(std::vector<Complex>& a, std::uint64_t stride, Complex m00, Complex m01,
              Complex m10, Complex m11) {
  const std::uint64_t dim = a.size();
  for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
    for (std::uint64_t i = base; i < base + stride; ++i) {
      const Complex v0 = a[i];
      const Complex v1 = a[i + stride];
      a[i] = m00 * v0 + m01 * v1;
      a[i + stride] = m10 * v0 + m11 * v1;
    }
  }
}

void apply_diag(std::vector<Complex>& a, std::uint64_t mask, Complex d0, Complex d1) {
  const std::uint64_t dim = a.size();
  if (d0 == Complex{1.0, 0.0}) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & mask) a[i] *= d1;
    }
    return;
  }
  for (std::uint64_t i = 0; i < dim; ++i) a[i] *= (i & mask) ? d1 : d0;
}

void apply_x(std::vector<Complex>& a, std::uint64_t stride) {
  const std::uint64_t dim = a.size();
  for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
    for (std::uint64_t i = base; i < base + stride; ++i) std::swap(a[i], a[i + stride]);
  }
}

void apply_y(std::vector<Complex>& a, std::uint64_t stride) {
  const std::uint64_t dim = a.size();
  for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
    for (std::uint64_t i = base; i < base + stride; ++i) {
      const Complex v0 = a[i];
      a[i] = -kI * a[i + stride];
      a[i + stride] = kI * v0;
    }
  }
}

// Swaps amplitudes i and i ^ flip for every i matching (i & select) == want.
void permute_pairs(std::vector<Complex>& a, std::uint64_t select, std::uint64_t want,
                   std::uint64_t flip) {
  const std::uint64_t dim = a.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & select) == want) std::swap(a[i], a[i ^ flip]);
  }
}

void apply_ising_xy(std::vector<Complex>& a, std::uint64_t ma, std::uint64_t mb, double theta) {
  // Acts only on the {|01>, |10>} subspace of (a, b).
  const double c = std::cos(theta);
  const Complex mis = Complex{0.0, -std::sin(theta)};
  const std::uint64_t dim = a.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & ma) == 0 && (i & mb) != 0) {
      const std::uint64_t j = i ^ ma ^ mb;  // a set, b clear
      const Complex v01 = a[i];
      const Complex v10 = a[j];
      a[i] = c * v01 + mis * v10;
      a[j] = mis * v01 + c * v10;
    }
  }
}

GateOp make(GateKind kind, std::vector<int> targets, double angle = 0.0) {
  return GateOp{kind, std::move(targets), angle};
}

}  // namespace

int arity(GateKind kind) {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::SWAP:
    case GateKind::IsingXY:
      return 2;
    case GateKind::Toffoli:
      return 3;
    default:
      return 1;
  }
}

bool is_parametric(GateKind kind) {
  return kind == GateKind::RZ || kind == GateKind::RY || kind == GateKind::IsingXY;
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::RZ: return "RZ";
    case GateKind::RY: return "RY";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SWAP: return "SWAP";
    case GateKind::Toffoli: return "Toffoli";
    case GateKind::IsingXY: return "IsingXY";
  }
  return "?";
}

namespace gates {
GateOp h(int q) { return make(GateKind::H, {q}); }
GateOp x(int q) { return make(GateKind::X, {q}); }
GateOp y(int q) { return make(GateKind::Y, {q}); }
GateOp z(int q) { return make(GateKind::Z, {q}); }
GateOp s(int q) { return make(GateKind::S, {q}); }
GateOp t(int q) { return make(GateKind::T, {q}); }
GateOp rz(int q, double theta) { return make(GateKind::RZ, {q}, theta); }
GateOp ry(int q, double theta) { return make(GateKind::RY, {q}, theta); }
GateOp cnot(int control, int target) { return make(GateKind::CNOT, {control, target}); }
GateOp swap(int a, int b) { return make(GateKind::SWAP, {a, b}); }
GateOp toffoli(int c1, int c2, int target) { return make(GateKind::Toffoli, {c1, c2, target}); }
GateOp ising_xy(int a, int b, double theta) { return make(GateKind::IsingXY, {a, b}, theta); }
}  // namespace gates

std::vector<Complex> gate_matrix(const GateOp& gate) {
  const double th = gate.angle;
  const double r = 1.0 / std::numbers::sqrt2;
  switch (gate.kind) {
    case GateKind::H: return {r, r, r, -r};
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::Y: return {0, -kI, kI, 0};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::S: return {1, 0, 0, kI};
    case GateKind::T: return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
    case GateKind::RZ: return {std::polar(1.0, -th / 2), 0, 0, std::polar(1.0, th / 2)};
    case GateKind::RY:
      return {std::cos(th / 2), -std::sin(th / 2), std::sin(th / 2), std::cos(th / 2)};
    case GateKind::CNOT:
      return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
    case GateKind::SWAP:
      return {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};
    case GateKind::IsingXY: {
      const Complex c = std::cos(th);
      const Complex s = Complex{0.0, -std::sin(th)};
      return {1, 0, 0, 0, 0, c, s, 0, 0, s, c, 0, 0, 0, 0, 1};
    }
    case GateKind::Toffoli: {
      // Standard CCX permutation: swaps |110> and |111>.
      std::vector<Complex> m(64, 0.0);
      for (int i = 0; i < 6; ++i) m[i * 8 + i] = 1.0;
      m[6 * 8 + 7] = 1.0;
      m[7 * 8 + 6] = 1.0;
      return m;
    }
  }
  throw std::logic_error("unknown gate kind");
}

void validate_gate(const GateOp& gate, int num_qubits) {
  const int k = arity(gate.kind);
  if (static_cast<int>(gate.targets.size()) != k) {
    throw std::invalid_argument(std::string(gate_name(gate.kind)) + " expects " + std::to_string(k) +
                                " target(s), got " + std::to_string(gate.targets.size()));
  }
  for (std::size_t i = 0; i < gate.targets.size(); ++i) {
    const int q = gate.targets[i];
    if (q < 0 || q >= num_qubits) {
      throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range for " +
                                  std::to_string(num_qubits) + "-qubit state");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gate.targets[j] == q) {
        throw std::invalid_argument("duplicate target qubit " + std::to_string(q) + " in " +
                                    std::string(gate_name(gate.kind)));
      }
    }
  }
  if (is_parametric(gate.kind) && !std::isfinite(gate.angle)) {
    throw std::invalid_argument("non-finite rotation angle");
  }
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("amplitude count must be a power of two >= 2, got " +
                                std::to_string(dim));
  }
  StateVector s(std::countr_zero(dim), std::move(amplitudes));
  if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("amplitudes are not normalized");
  }
  return s;
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return acc;
}

void StateVector::apply(const GateOp& gate) {
  validate_gate(gate, num_qubits_);
  const int n = num_qubits_;
  const auto& t = gate.targets;
  const std::uint64_t m0 = bit_of(n, t[0]);
  const double th = gate.angle;
  switch (gate.kind) {
    case GateKind::H: {
      const double r = 1.0 / std::numbers::sqrt2;
      apply_1q(amps_, m0, r, r, r, -r);
      break;
    }
    case GateKind::X: apply_x(amps_, m0); break;
    case GateKind::Y: apply_y(amps_, m0); break;
    case GateKind::Z: apply_diag(amps_, m0, 1.0, -1.0); break;
    case GateKind::S: apply_diag(amps_, m0, 1.0, kI); break;
    case GateKind::T: apply_diag(amps_, m0, 1.0, std::polar(1.0, std::numbers::pi / 4)); break;
    case GateKind::RZ:
      apply_diag(amps_, m0, std::polar(1.0, -th / 2), std::polar(1.0, th / 2));
      break;
    case GateKind::RY: {
      const double c = std::cos(th / 2);
      const double s = std::sin(th / 2);
      apply_1q(amps_, m0, c, -s, s, c);
      break;
    }
    case GateKind::CNOT: {
      const std::uint64_t mt = bit_of(n, t[1]);
      permute_pairs(amps_, m0 | mt, m0, mt);
      break;
    }
    case GateKind::SWAP: {
      const std::uint64_t mb = bit_of(n, t[1]);
      permute_pairs(amps_, m0 | mb, m0, m0 | mb);
      break;
    }
    case GateKind::Toffoli: {
      const std::uint64_t m1 = bit_of(n, t[1]);
      const std::uint64_t mt = bit_of(n, t[2]);
      permute_pairs(amps_, m0 | m1 | mt, m0 | m1, mt);
      break;
    }
    case GateKind::IsingXY: apply_ising_xy(amps_, m0, bit_of(n, t[1]), th); break;
  }
}

StateVector new_zero_state(int n, int max_qubits) {
  return basis_state(n, 0, max_qubits);
}

StateVector basis_state(int n, std::uint64_t index, int max_qubits) {
  check_size(n, max_qubits);
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (index >= dim) {
    throw std::invalid_argument("basis index " + std::to_string(index) + " out of range");
  }
  std::vector<Complex> amps(dim, Complex{0.0, 0.0});
  amps[index] = 1.0;
  return StateVector(n, std::move(amps));
}

StateVector tensor_product(const StateVector& a, const StateVector& b, int max_qubits) {
  const int n = a.num_qubits() + b.num_qubits();
  check_size(n, max_qubits);
  std::vector<Complex> amps;
  amps.reserve(a.dimension() * b.dimension());
  for (const auto& x : a.amplitudes()) {
    for (const auto& y : b.amplitudes()) amps.push_back(x * y);
  }
  return StateVector(n, std::move(amps));
}

StateVector apply_gate(StateVector state, const GateOp& gate) {
  state.apply(gate);
  return state;
}

StateVector apply_circuit(StateVector state, std::span<const GateOp> circuit) {
  for (const auto& g : circuit) state.apply(g);
  return state;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner product of " + std::to_string(a.num_qubits()) + "- and " +
                                std::to_string(b.num_qubits()) + "-qubit states");
  }
  Complex acc{0.0, 0.0};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

double probability_zero(const StateVector& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::invalid_argument("qubit index " + std::to_string(qubit) + " out of range");
  }
  const std::uint64_t m = bit_of(state.num_qubits(), qubit);
  const auto amps = state.amplitudes();
  double p0 = 0.0;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & m) == 0) p0 += std::norm(amps[i]);
  }
  return p0;
}

double z_expectation(const StateVector& state, int qubit) {
  const double p0 = probability_zero(state, qubit);
  return std::clamp(2.0 * p0 - state.norm_squared(), -1.0, 1.0);
}

std::vector<double> probabilities(const StateVector& state) {
  std::vector<double> p;
  p.reserve(state.dimension());
  for (const auto& a : state.amplitudes()) p.push_back(std::norm(a));
  return p;
}

std::vector<std::uint64_t> sample_shots(const StateVector& state, std::uint64_t shots, Rng& rng) {
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  std::vector<double> cdf = probabilities(state);
  for (std::size_t i = 1; i < cdf.size(); ++i) cdf[i] += cdf[i - 1];
  const double total = cdf.back();
  std::vector<std::uint64_t> out;
  out.reserve(shots);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    out.push_back(static_cast<std::uint64_t>(it - cdf.begin()));
  }
  return out;
}

std::vector<MeasurementSample> sample_basis(const StateVector& state, std::uint64_t shots,
                                            std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<std::uint64_t> counts(state.dimension(), 0);
  for (auto idx : sample_shots(state, shots, rng)) ++counts[idx];
  std::vector<MeasurementSample> out;
  for (std::uint64_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) out.push_back({i, counts[i]});
  }
  return out;
}

}  // namespace qkb::qsim
