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
#include "qkb/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qkb::noise {
namespace {

using qsim::Complex;

Density2 conjugate(const Density2& rho, Pauli p) {
  // P rho P for P in {X, Y, Z}; Paulis are Hermitian.
  const Complex a = rho[0], b = rho[1], c = rho[2], d = rho[3];
  switch (p) {
    case Pauli::X: return {d, c, b, a};
    case Pauli::Y: return {d, -c, -b, a};
    case Pauli::Z: return {a, -b, -c, d};
    case Pauli::I: break;
  }
  return rho;
}

}  // namespace

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::BitFlip: return "bit_flip";
    case NoiseKind::PhaseFlip: return "phase_flip";
    case NoiseKind::BitPhaseFlip: return "bit_phase_flip";
    case NoiseKind::MixedPauli: return "mixed_pauli";
  }
  return "?";
}

NoiseKind parse_noise_kind(std::string_view text) {
  for (auto k : {NoiseKind::BitFlip, NoiseKind::PhaseFlip, NoiseKind::BitPhaseFlip,
                 NoiseKind::MixedPauli}) {
    if (text == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown noise kind '" + std::string(text) + "'");
}

std::string_view to_string(Pauli p) {
  switch (p) {
    case Pauli::I: return "I";
    case Pauli::X: return "X";
    case Pauli::Y: return "Y";
    case Pauli::Z: return "Z";
  }
  return "?";
}

std::string_view to_string(InjectionPoint point) {
  switch (point) {
    case InjectionPoint::AfterEncoding: return "after-encoding";
    case InjectionPoint::AfterFeatureMap: return "after-feature-map";
    case InjectionPoint::Both: return "both";
  }
  return "?";
}

InjectionPoint parse_injection_point(std::string_view text) {
  for (auto p : {InjectionPoint::AfterEncoding, InjectionPoint::AfterFeatureMap,
                 InjectionPoint::Both}) {
    if (text == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown injection point '" + std::string(text) + "'");
}

void NoiseSpec::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("noise probability must lie in [0, 1], got " + std::to_string(p));
  }
}

Pauli sample_pauli(const NoiseSpec& spec, Rng& rng) {
  const double u = uniform01(rng);
  if (!(u < spec.p)) return Pauli::I;
  switch (spec.kind) {
    case NoiseKind::BitFlip: return Pauli::X;
    case NoiseKind::PhaseFlip: return Pauli::Z;
    case NoiseKind::BitPhaseFlip: return Pauli::Y;
    case NoiseKind::MixedPauli: {
      // u is uniform on [0, p) here; split it into three equal branches.
      const int branch = std::min(2, static_cast<int>(3.0 * u / spec.p));
      constexpr Pauli order[] = {Pauli::X, Pauli::Z, Pauli::Y};
      return order[branch];
    }
  }
  return Pauli::I;
}

qsim::GateOp pauli_gate(Pauli p, int qubit) {
  switch (p) {
    case Pauli::X: return qsim::gates::x(qubit);
    case Pauli::Y: return qsim::gates::y(qubit);
    case Pauli::Z: return qsim::gates::z(qubit);
    case Pauli::I: break;
  }
  throw std::invalid_argument("identity has no gate");
}

qsim::StateVector apply_noise(qsim::StateVector state, const NoiseSpec& spec,
                              std::span<const int> qubits, Rng& rng,
                              std::vector<AppliedError>* log, std::uint64_t shot) {
  spec.validate();
  for (int q : qubits) {
    if (q < 0 || q >= state.num_qubits()) {
      throw std::invalid_argument("noise target qubit " + std::to_string(q) + " out of range");
    }
  }
  for (int q : qubits) {
    const Pauli p = sample_pauli(spec, rng);
    if (p == Pauli::I) continue;
    state.apply(pauli_gate(p, q));
    if (log) log->push_back({shot, q, p});
  }
  return state;
}

TrajectoryBatch run_trajectories(const qsim::StateVector& state, const NoiseSpec& spec,
                                 std::span<const int> qubits, std::uint64_t shots,
                                 std::uint64_t seed,
                                 const std::function<void(const qsim::StateVector&)>& visit) {
  if (shots == 0) throw std::invalid_argument("trajectory count must be >= 1");
  TrajectoryBatch batch{shots, seed, {}};
  for (std::uint64_t s = 0; s < shots; ++s) {
    Rng rng = make_rng(derive_seed(seed, s));
    auto traj = apply_noise(state, spec, qubits, rng, &batch.errors, s);
    if (visit) visit(traj);
  }
  return batch;
}

Density2 pure_density(const qsim::StateVector& single_qubit) {
  if (single_qubit.num_qubits() != 1) {
    throw std::invalid_argument("pure_density expects a single-qubit state");
  }
  const Complex a = single_qubit.amplitude(0);
  const Complex b = single_qubit.amplitude(1);
  return {a * std::conj(a), a * std::conj(b), b * std::conj(a), b * std::conj(b)};
}

Density2 expected_density_effect(const NoiseSpec& spec, const qsim::StateVector& single_qubit) {
  spec.validate();
  const Density2 rho = pure_density(single_qubit);
  Density2 out{};
  auto accumulate = [&out](const Density2& term, double w) {
    for (int i = 0; i < 4; ++i) out[i] += w * term[i];
  };
  accumulate(rho, 1.0 - spec.p);
  switch (spec.kind) {
    case NoiseKind::BitFlip: accumulate(conjugate(rho, Pauli::X), spec.p); break;
    case NoiseKind::PhaseFlip: accumulate(conjugate(rho, Pauli::Z), spec.p); break;
    case NoiseKind::BitPhaseFlip: accumulate(conjugate(rho, Pauli::Y), spec.p); break;
    case NoiseKind::MixedPauli:
      for (auto p : {Pauli::X, Pauli::Z, Pauli::Y}) accumulate(conjugate(rho, p), spec.p / 3.0);
      break;
  }
  return out;
}

}  // namespace qkb::noise
