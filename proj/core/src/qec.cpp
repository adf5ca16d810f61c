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
#include "qkb/qec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qkb::qec {
namespace {

std::uint64_t basis_index_of(const qsim::StateVector& state) {
  const auto amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (std::abs(std::norm(amps[i]) - 1.0) <= 1e-10) return i;
  }
  throw std::invalid_argument("syndrome extraction requires a computational-basis state");
}

int bit_value(std::uint64_t index, int n, int qubit) {
  return static_cast<int>((index >> (n - 1 - qubit)) & 1U);
}

}  // namespace

RepetitionCode::RepetitionCode(int n) : n_(n) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("repetition code length must be odd and >= 3, got " +
                                std::to_string(n));
  }
}

bool Syndrome::trivial() const {
  for (int v : values) {
    if (v != 1) return false;
  }
  return true;
}

qsim::StateVector encode_logical(int bit, const RepetitionCode& code) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("logical bit must be 0 or 1");
  auto state = qsim::new_zero_state(code.n());
  if (bit == 1) {
    for (int q = 0; q < code.n(); ++q) state.apply(qsim::gates::x(q));
  }
  return state;
}

Syndrome measure_syndrome(const qsim::StateVector& state, const RepetitionCode& code) {
  if (state.num_qubits() != code.n()) {
    throw std::invalid_argument("state has " + std::to_string(state.num_qubits()) +
                                " qubits, code expects " + std::to_string(code.n()));
  }
  const auto idx = basis_index_of(state);
  Syndrome s;
  s.values.reserve(code.n() - 1);
  for (int i = 0; i + 1 < code.n(); ++i) {
    const int zi = bit_value(idx, code.n(), i) ? -1 : 1;
    const int zj = bit_value(idx, code.n(), i + 1) ? -1 : 1;
    s.values.push_back(zi * zj);
  }
  return s;
}

std::vector<int> decode_syndrome(const Syndrome& syndrome, const RepetitionCode& code) {
  const int n = code.n();
  if (static_cast<int>(syndrome.values.size()) != n - 1) {
    throw std::invalid_argument("syndrome length must be n - 1");
  }
  // Candidate pattern with e_0 = 0; a -1 stabilizer toggles the error bit.
  std::vector<int> e(n, 0);
  for (int i = 0; i + 1 < n; ++i) {
    const int v = syndrome.values[i];
    if (v != 1 && v != -1) throw std::invalid_argument("syndrome entries must be +1 or -1");
    e[i + 1] = e[i] ^ (v == -1 ? 1 : 0);
  }
  int weight = 0;
  for (int b : e) weight += b;
  std::vector<int> flips;
  const int pick = (weight > n / 2) ? 0 : 1;  // complement pattern is lighter
  for (int q = 0; q < n; ++q) {
    if (e[q] == pick) flips.push_back(q);
  }
  return flips;
}

Correction correct(qsim::StateVector state, const Syndrome& syndrome, const RepetitionCode& code) {
  auto flips = decode_syndrome(syndrome, code);
  for (int q : flips) state.apply(qsim::gates::x(q));
  return {std::move(state), std::move(flips)};
}

int majority_decode(std::span<const int> bits) {
  if (bits.empty() || bits.size() % 2 == 0) {
    throw std::invalid_argument("majority decoding needs an odd number of bits, got " +
                                std::to_string(bits.size()));
  }
  std::size_t ones = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("bits must be 0 or 1");
    ones += static_cast<std::size_t>(b);
  }
  return ones * 2 > bits.size() ? 1 : 0;
}

int read_logical(const qsim::StateVector& state, const RepetitionCode& code) {
  const auto idx = basis_index_of(state);
  std::vector<int> bits(code.n());
  for (int q = 0; q < code.n(); ++q) bits[q] = bit_value(idx, code.n(), q);
  return majority_decode(bits);
}

int protect_bit(int bit, std::span<const int> flips, const RepetitionCode& code) {
  if (static_cast<int>(flips.size()) != code.n()) {
    throw std::invalid_argument("flip mask length must equal code length");
  }
  auto state = encode_logical(bit, code);
  for (int q = 0; q < code.n(); ++q) {
    if (flips[q]) state.apply(qsim::gates::x(q));
  }
  const auto syndrome = measure_syndrome(state, code);
  return read_logical(correct(std::move(state), syndrome, code).state, code);
}

}  // namespace qkb::qec
