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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qkb/common.hpp"
#include "qkb/qsim.hpp"
#include "support/dense_oracle.hpp"

namespace qkb::qsim {
namespace {

using testing::cd;
constexpr double kTol = 1e-12;

void expect_amps(const StateVector& s, const std::vector<cd>& want, double tol = kTol) {
  ASSERT_EQ(s.dimension(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(s.amplitude(i).real(), want[i].real(), tol) << "index " << i;
    EXPECT_NEAR(s.amplitude(i).imag(), want[i].imag(), tol) << "index " << i;
  }
}

std::vector<cd> random_amplitudes(int n, Rng& rng) {
  std::vector<cd> v(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& a : v) {
    a = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

TEST(StateVector, ZeroStateHasSingleUnitAmplitude) {
  const auto s = new_zero_state(3);
  EXPECT_EQ(s.num_qubits(), 3);
  EXPECT_EQ(s.dimension(), 8u);
  expect_amps(s, {1, 0, 0, 0, 0, 0, 0, 0});
}

TEST(StateVector, RejectsNonPositiveQubitCount) {
  EXPECT_THROW(new_zero_state(0), std::invalid_argument);
  EXPECT_THROW(new_zero_state(-2), std::invalid_argument);
}

TEST(StateVector, ResourceLimitNamesRequiredMemory) {
  try {
    (void)new_zero_state(15);
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("524288"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(new_zero_state(15, 15));
}

TEST(StateVector, FromAmplitudesValidatesShapeAndNorm) {
  EXPECT_THROW(StateVector::from_amplitudes({1, 0, 0}), std::invalid_argument);
  EXPECT_THROW(StateVector::from_amplitudes({1, 1}), std::invalid_argument);
  EXPECT_NO_THROW(StateVector::from_amplitudes({0, cd(0, 1)}));
}

TEST(Gates, HadamardOnZero) {
  expect_amps(apply_gate(new_zero_state(1), gates::h(0)), {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
}

TEST(Gates, BellPairFromHadamardAndCnot) {
  const std::vector<GateOp> ops{gates::h(0), gates::cnot(0, 1)};
  const double r = 1 / std::sqrt(2.0);
  expect_amps(apply_circuit(new_zero_state(2), ops), {r, 0, 0, r});
}

TEST(Gates, QubitZeroIsMostSignificant) {
  expect_amps(apply_gate(new_zero_state(3), gates::x(0)), {0, 0, 0, 0, 1, 0, 0, 0});
  expect_amps(apply_gate(new_zero_state(3), gates::x(2)), {0, 1, 0, 0, 0, 0, 0, 0});
}

TEST(Gates, RzHalfTurnPhases) {
  const auto s = apply_gate(apply_gate(new_zero_state(1), gates::h(0)), gates::rz(0, std::numbers::pi));
  const double r = 1 / std::sqrt(2.0);
  expect_amps(s, {cd(0, -r), cd(0, r)});
}

TEST(Gates, RyQuarterTurn) {
  const auto s = apply_gate(new_zero_state(1), gates::ry(0, std::numbers::pi / 2));
  expect_amps(s, {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
}

TEST(Gates, IsingXYMixesOneExcitationSubspace) {
  // |01> -> cos t |01> - i sin t |10>
  const double t = 0.3;
  const auto s = apply_gate(basis_state(2, 1), gates::ising_xy(0, 1, t));
  expect_amps(s, {0, std::cos(t), cd(0, -std::sin(t)), 0});
  expect_amps(apply_gate(basis_state(2, 3), gates::ising_xy(0, 1, t)), {0, 0, 0, 1});
}

TEST(Gates, ToffoliFlipsTargetOnlyWhenBothControlsSet) {
  for (std::uint64_t b = 0; b < 8; ++b) {
    const auto s = apply_gate(basis_state(3, b), gates::toffoli(0, 1, 2));
    const std::uint64_t want = (b & 6u) == 6u ? b ^ 1u : b;
    EXPECT_NEAR(std::abs(s.amplitude(want)), 1.0, kTol) << "input " << b;
  }
}

TEST(Gates, SwapExchangesQubits) {
  const auto s = apply_gate(basis_state(3, 0b100), gates::swap(0, 2));
  EXPECT_NEAR(std::abs(s.amplitude(0b001)), 1.0, kTol);
}

TEST(Gates, LocalMatricesMatchTextbookForms) {
  Rng rng = make_rng(7);
  for (auto kind : kAllGateKinds) {
    std::vector<int> t(static_cast<std::size_t>(arity(kind)));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<int>(i);
    const GateOp g{kind, t, is_parametric(kind) ? uniform01(rng) * 6.0 - 3.0 : 0.0};
    const auto want = testing::local_matrix(g);
    const auto got = gate_matrix(g);
    const std::size_t dim = want.size();
    ASSERT_EQ(got.size(), dim * dim) << gate_name(kind);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        EXPECT_NEAR(std::abs(got[r * dim + c] - want[r][c]), 0.0, 1e-14) << gate_name(kind);
      }
    }
  }
}

TEST(Gates, ValidationRejectsBadTargets) {
  EXPECT_THROW(validate_gate(gates::h(3), 3), std::invalid_argument);
  EXPECT_THROW(validate_gate(gates::cnot(1, 1), 3), std::invalid_argument);
  EXPECT_THROW(validate_gate({GateKind::CNOT, {0}, 0.0}, 3), std::invalid_argument);
  EXPECT_THROW(validate_gate(gates::rz(0, std::nan("")), 1), std::invalid_argument);
  EXPECT_THROW(validate_gate(gates::h(-1), 2), std::invalid_argument);
  auto s = new_zero_state(2);
  EXPECT_THROW(s.apply(gates::toffoli(0, 1, 2)), std::invalid_argument);
}

TEST(Unitarity, EveryGateAtRandomAngles) {
  Rng rng = make_rng(11);
  for (auto kind : kAllGateKinds) {
    const int trials = is_parametric(kind) ? 100 : 1;
    for (int i = 0; i < trials; ++i) {
      std::vector<int> t(static_cast<std::size_t>(arity(kind)));
      for (std::size_t j = 0; j < t.size(); ++j) t[j] = static_cast<int>(j);
      const GateOp g{kind, t, (uniform01(rng) * 4.0 - 2.0) * std::numbers::pi};
      const auto u = gate_matrix(g);
      const std::size_t dim = std::size_t{1} << t.size();
      for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
          cd acc = 0;
          for (std::size_t k = 0; k < dim; ++k) acc += std::conj(u[k * dim + r]) * u[k * dim + c];
          EXPECT_NEAR(std::abs(acc - cd(r == c ? 1.0 : 0.0)), 0.0, 1e-10) << gate_name(kind);
        }
      }
    }
  }
}

TEST(Kernels, AgreeWithDenseOracleOnRandomCircuits) {
  Rng rng = make_rng(2024);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<GateOp> ops;
      for (int i = 0; i < 20; ++i) ops.push_back(testing::random_gate(n, rng));
      const auto init = random_amplitudes(n, rng);
      const auto got = apply_circuit(StateVector::from_amplitudes(init), ops);
      const auto want = testing::apply(testing::circuit_matrix(ops, n), init);
      for (std::size_t i = 0; i < want.size(); ++i) {
        ASSERT_NEAR(std::abs(got.amplitude(i) - want[i]), 0.0, 1e-10) << "n=" << n << " trial " << trial;
      }
    }
  }
}

TEST(Kernels, NormPreservedOverLongRandomSequence) {
  Rng rng = make_rng(99);
  auto s = StateVector::from_amplitudes(random_amplitudes(6, rng));
  for (int i = 0; i < 1000; ++i) {
    s.apply(testing::random_gate(6, rng));
    ASSERT_NEAR(s.norm_squared(), 1.0, 1e-10) << "after gate " << i;
  }
}

TEST(Tensor, FirstFactorTakesLowQubitIndices) {
  const auto s = tensor_product(basis_state(1, 1), basis_state(2, 0));
  EXPECT_NEAR(std::abs(s.amplitude(0b100)), 1.0, kTol);
  EXPECT_THROW(tensor_product(new_zero_state(8), new_zero_state(7)), ResourceError);
}

TEST(Observables, InnerProductAndFidelity) {
  const auto plus = apply_gate(new_zero_state(1), gates::h(0));
  EXPECT_NEAR(fidelity(plus, new_zero_state(1)), 0.5, kTol);
  EXPECT_NEAR(std::abs(inner_product(plus, plus)), 1.0, kTol);
  EXPECT_NEAR(fidelity(basis_state(2, 1), basis_state(2, 2)), 0.0, kTol);
}

TEST(Observables, ZExpectationAndMarginals) {
  const auto s = apply_gate(new_zero_state(2), gates::ry(1, 2.0 * std::acos(std::sqrt(0.8))));
  EXPECT_NEAR(z_expectation(s, 0), 1.0, kTol);
  EXPECT_NEAR(z_expectation(s, 1), 0.6, kTol);
  EXPECT_NEAR(probability_zero(s, 1), 0.8, kTol);
  const auto p = probabilities(s);
  EXPECT_NEAR(p[0], 0.8, kTol);
  EXPECT_NEAR(p[1], 0.2, kTol);
}

TEST(Sampling, SeededDeterministicAndBornDistributed) {
  const auto s = apply_gate(new_zero_state(1), gates::ry(0, 2.0 * std::acos(std::sqrt(0.3))));
  const auto a = sample_basis(s, 100000, 5);
  EXPECT_EQ(a, sample_basis(s, 100000, 5));
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].shot_count + a[1].shot_count, 100000u);
  // 5 sigma for Binomial(1e5, 0.3)
  EXPECT_NEAR(static_cast<double>(a[0].shot_count) / 1e5, 0.3, 5 * std::sqrt(0.21 / 1e5));
}

TEST(Sampling, BasisStateAlwaysSamplesItself) {
  const auto a = sample_basis(basis_state(3, 5), 1000, 1);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].basis_index, 5u);
  EXPECT_EQ(a[0].shot_count, 1000u);
}

}  // namespace
}  // namespace qkb::qsim
