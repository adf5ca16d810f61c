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

// n-qubit bit-flip repetition code over computational-basis data:
// |0>_L = |0...0>, |1>_L = |1...1>, stabilizers S_i = Z_i Z_{i+1}.

#include <cstdint>
#include <span>
#include <vector>

#include "qkb/qsim.hpp"

namespace qkb::qec {

class RepetitionCode {
 public:
  /// n must be odd and >= 3.
  explicit RepetitionCode(int n);
  int n() const { return n_; }
  int max_correctable() const { return (n_ - 1) / 2; }

 private:
  int n_;
};

/// Stabilizer eigenvalues, each +1 or -1; length n - 1.
struct Syndrome {
  std::vector<int> values;
  bool trivial() const;
  bool operator==(const Syndrome&) const = default;
};

qsim::StateVector encode_logical(int bit, const RepetitionCode& code);

/// Requires a computational-basis state (one amplitude of modulus 1 within
/// 1e-10); throws std::invalid_argument otherwise.
Syndrome measure_syndrome(const qsim::StateVector& state, const RepetitionCode& code);

/// Minimum-weight X-error pattern consistent with the syndrome. Because n is
/// odd, exactly one of the two candidate patterns has weight <= (n-1)/2.
std::vector<int> decode_syndrome(const Syndrome& syndrome, const RepetitionCode& code);

struct Correction {
  qsim::StateVector state;
  std::vector<int> flipped;  // qubits that received an X
};

Correction correct(qsim::StateVector state, const Syndrome& syndrome, const RepetitionCode& code);

/// Majority value of an odd number of bits.
int majority_decode(std::span<const int> bits);

/// Logical value of a codeword state (majority over its basis bits).
int read_logical(const qsim::StateVector& state, const RepetitionCode& code);

/// Full cycle on a classical bit: encode, apply X on each qubit whose flip
/// flag is set, measure, correct, decode. Returns the decoded logical bit.
int protect_bit(int bit, std::span<const int> flips, const RepetitionCode& code);

}  // namespace qkb::qec
