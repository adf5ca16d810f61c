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

#include "qkb/qec.hpp"

namespace qkb::qec {
namespace {

qsim::StateVector flip(qsim::StateVector s, std::initializer_list<int> qubits) {
  for (int q : qubits) s.apply(qsim::gates::x(q));
  return s;
}

TEST(RepetitionCode, RejectsEvenOrShortLengths) {
  EXPECT_THROW(RepetitionCode(2), std::invalid_argument);
  EXPECT_THROW(RepetitionCode(1), std::invalid_argument);
  EXPECT_THROW(RepetitionCode(4), std::invalid_argument);
  EXPECT_EQ(RepetitionCode(5).max_correctable(), 2);
}

TEST(Encode, LogicalBasisStates) {
  const RepetitionCode code(3);
  EXPECT_NEAR(std::abs(encode_logical(0, code).amplitude(0b000)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(encode_logical(1, code).amplitude(0b111)), 1.0, 1e-15);
  EXPECT_THROW(encode_logical(2, code), std::invalid_argument);
}

TEST(Syndrome, TableForThreeQubits) {
  const RepetitionCode code(3);
  const auto s0 = encode_logical(0, code);
  // Z_i Z_{i+1} eigenvalues
  EXPECT_EQ(measure_syndrome(s0, code).values, (std::vector<int>{1, 1}));
  EXPECT_EQ(measure_syndrome(flip(s0, {0}), code).values, (std::vector<int>{-1, 1}));
  EXPECT_EQ(measure_syndrome(flip(s0, {1}), code).values, (std::vector<int>{-1, -1}));
  EXPECT_EQ(measure_syndrome(flip(s0, {2}), code).values, (std::vector<int>{1, -1}));
  EXPECT_TRUE(measure_syndrome(s0, code).trivial());
}

TEST(Syndrome, RejectsSuperpositions) {
  const RepetitionCode code(3);
  const auto s = qsim::apply_gate(qsim::new_zero_state(3), qsim::gates::h(0));
  EXPECT_THROW(measure_syndrome(s, code), std::invalid_argument);
  EXPECT_THROW(measure_syndrome(qsim::new_zero_state(2), code), std::invalid_argument);
}

TEST(Correct, EverySingleErrorOnBothLogicalStates) {
  const RepetitionCode code(3);
  for (int bit : {0, 1}) {
    for (int q = 0; q < 3; ++q) {
      const auto noisy = flip(encode_logical(bit, code), {q});
      const auto fixed = correct(noisy, measure_syndrome(noisy, code), code);
      EXPECT_EQ(fixed.flipped, std::vector<int>{q});
      EXPECT_EQ(fixed.state, encode_logical(bit, code));
      EXPECT_EQ(read_logical(fixed.state, code), bit);
    }
  }
}

TEST(Correct, TwoErrorsBecomeLogicalError) {
  const RepetitionCode code(3);
  for (int bit : {0, 1}) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const auto noisy = flip(encode_logical(bit, code), {a, b});
        const auto fixed = correct(noisy, measure_syndrome(noisy, code), code);
        EXPECT_EQ(read_logical(fixed.state, code), 1 - bit);
        EXPECT_EQ(fixed.state, encode_logical(1 - bit, code));
      }
    }
  }
}

TEST(Correct, FiveQubitCodeFixesUpToTwoErrors) {
  const RepetitionCode code(5);
  for (unsigned pattern = 0; pattern < 32; ++pattern) {
    const int weight = __builtin_popcount(pattern);
    auto s = encode_logical(0, code);
    for (int q = 0; q < 5; ++q) {
      if (pattern & (1u << q)) s.apply(qsim::gates::x(q));
    }
    const auto fixed = correct(s, measure_syndrome(s, code), code);
    EXPECT_EQ(read_logical(fixed.state, code), weight <= 2 ? 0 : 1) << pattern;
  }
}

TEST(Decode, MinimumWeightPatterns) {
  const RepetitionCode code(3);
  EXPECT_TRUE(decode_syndrome({{1, 1}}, code).empty());
  EXPECT_EQ(decode_syndrome({{-1, -1}}, code), std::vector<int>{1});
  EXPECT_EQ(decode_syndrome({{1, -1}}, code), std::vector<int>{2});
  EXPECT_EQ(decode_syndrome({{-1, 1, 1, -1}}, RepetitionCode(5)), (std::vector<int>{0, 4}));
  EXPECT_THROW(decode_syndrome({{1}}, code), std::invalid_argument);
  EXPECT_THROW(decode_syndrome({{0, 1}}, code), std::invalid_argument);
}

TEST(MajorityDecode, Votes) {
  const std::vector<int> a{0, 1, 1}, b{1, 0, 0}, c{1, 1, 0, 1, 0};
  EXPECT_EQ(majority_decode(a), 1);
  EXPECT_EQ(majority_decode(b), 0);
  EXPECT_EQ(majority_decode(c), 1);
  const std::vector<int> even{0, 1}, bad{0, 2, 1};
  EXPECT_THROW(majority_decode(even), std::invalid_argument);
  EXPECT_THROW(majority_decode(bad), std::invalid_argument);
}

TEST(ProtectBit, CorrectsSingleFlipsOnly) {
  const RepetitionCode code(3);
  const std::vector<int> none{0, 0, 0}, one{0, 1, 0}, two{1, 0, 1};
  EXPECT_EQ(protect_bit(1, none, code), 1);
  EXPECT_EQ(protect_bit(1, one, code), 1);
  EXPECT_EQ(protect_bit(1, two, code), 0);
}

}  // namespace
}  // namespace qkb::qec
