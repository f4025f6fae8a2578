// Copyright 2026 The bcabe Authors
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

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "bcabe/basis.hpp"

using namespace bcabe;

namespace {

std::vector<std::string> render(const std::vector<BitString>& strings) {
  std::vector<std::string> out;
  for (const auto& s : strings) out.push_back(s.to_string());
  return out;
}

std::vector<PureStateVector> full_ghz_basis(int n) {
  std::vector<PureStateVector> basis;
  for (const auto& s : enumerate_p_strings(n)) basis.push_back(ghz_state(s, +1));
  for (const auto& s : enumerate_p_strings(n)) basis.push_back(ghz_state(s, -1));
  for (const auto& s : enumerate_q_strings(n)) basis.push_back(ghz_state(s, +1));
  for (const auto& s : enumerate_q_strings(n)) basis.push_back(ghz_state(s, -1));
  return basis;
}

}  // namespace

TEST(BitString, ParseRenderComplement) {
  const BitString s = BitString::parse("0011");
  EXPECT_EQ(s.value(), 3u);
  EXPECT_EQ(s.to_string(), "0011");
  EXPECT_EQ(s.complement().to_string(), "1100");
  EXPECT_EQ(s.zero_count(), 2);
  EXPECT_EQ(s.bit(1), 0);
  EXPECT_EQ(s.bit(4), 1);
  EXPECT_THROW(BitString::parse("01a"), PreconditionError);
  EXPECT_THROW(BitString(2, 4), PreconditionError);
}

TEST(PStrings, SmallCases) {
  EXPECT_EQ(render(enumerate_p_strings(2)), (std::vector<std::string>{"00"}));
  EXPECT_EQ(render(enumerate_p_strings(4)),
            (std::vector<std::string>{"0000", "0011", "0101", "0110"}));
}

TEST(PStrings, SixQubitsMatchTheWrittenOutProjector) {
  // The sixteen leading-0 members of the six-qubit even family, as listed
  // term by term in the expansion of the unnormalized projector.
  const std::vector<std::string> listed = {
      "000000", "000011", "000101", "000110", "001001", "001010", "001100", "001111",
      "010001", "010010", "010100", "010111", "011000", "011011", "011101", "011110"};
  EXPECT_EQ(render(enumerate_p_strings(6)), listed);
}

TEST(QStrings, SmallCases) {
  EXPECT_EQ(render(enumerate_q_strings(2)), (std::vector<std::string>{"01"}));
  EXPECT_EQ(render(enumerate_q_strings(4)),
            (std::vector<std::string>{"0001", "0010", "0100", "0111"}));
  const auto six = render(enumerate_q_strings(6));
  EXPECT_EQ(six.size(), 16u);
  EXPECT_NE(std::find(six.begin(), six.end(), "000001"), six.end());
  // 100011 leads with 1, so it only appears as the complement of 011100.
  EXPECT_EQ(std::find(six.begin(), six.end(), "100011"), six.end());
  EXPECT_NE(std::find(six.begin(), six.end(), "011100"), six.end());
}

TEST(Strings, RejectOddOrTooSmall) {
  for (int n : {0, 1, 3, 5}) {
    EXPECT_THROW(enumerate_p_strings(n), PreconditionError) << n;
    EXPECT_THROW(enumerate_q_strings(n), PreconditionError) << n;
  }
}

TEST(Strings, FourFamiliesPartitionAllStrings) {
  for (int n : {2, 4, 6, 8}) {
    const auto p = enumerate_p_strings(n);
    const auto q = enumerate_q_strings(n);
    const std::size_t quarter = std::size_t{1} << (n - 2);
    ASSERT_EQ(p.size(), quarter);
    ASSERT_EQ(q.size(), quarter);
    std::set<std::uint64_t> seen;
    for (const auto& family : {p, q})
      for (const auto& s : family) {
        EXPECT_TRUE(seen.insert(s.value()).second);
        EXPECT_TRUE(seen.insert(s.complement().value()).second);
        // complements keep the zero-count parity for even n
        EXPECT_EQ(s.zero_count() % 2, s.complement().zero_count() % 2);
      }
    EXPECT_EQ(seen.size(), std::size_t{1} << n);
  }
}

TEST(Ghz, TwoQubitReductionIsBell) {
  EXPECT_LT(vector_distance(ghz_state(BitString::parse("00"), +1), bell_state(BellLabel::phi_plus())),
            1e-15);
}

TEST(Ghz, FourQubitMinus) {
  const PureStateVector v = ghz_state(BitString::parse("0000"), -1);
  EXPECT_EQ(v.nonzero_count(), 2u);
  EXPECT_NEAR(v.amplitude(0).real(), 1 / std::sqrt(2.0), 1e-16);
  EXPECT_NEAR(v.amplitude(15).real(), -1 / std::sqrt(2.0), 1e-16);
}

TEST(Ghz, SignsAreOrthogonal) {
  for (int n : {2, 4, 6})
    for (const auto& s : enumerate_p_strings(n))
      EXPECT_EQ(inner_product(ghz_state(s, +1), ghz_state(s, -1)), Complex{});
  EXPECT_THROW(ghz_state(BitString::parse("01"), 0), PreconditionError);
}

TEST(Ghz, GramMatrixIsIdentity) {
  for (int n : {4, 6}) {
    const auto basis = full_ghz_basis(n);
    ASSERT_EQ(basis.size(), std::size_t{1} << n);
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      EXPECT_NEAR(basis[i].norm_squared(), 1.0, 1e-12);
      EXPECT_EQ(basis[i].nonzero_count(), 2u);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const Complex g = inner_product(basis[i], basis[j]);
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    }
    EXPECT_LT(worst, 1e-12) << "n=" << n;
  }
}

TEST(Bell, StandardVectors) {
  const double r = 1 / std::sqrt(2.0);
  const PureStateVector phi = bell_state({0, 0});
  EXPECT_NEAR(phi.amplitude(0).real(), r, 1e-16);
  EXPECT_NEAR(phi.amplitude(3).real(), r, 1e-16);
  const PureStateVector psi_m = bell_state({1, 1});
  EXPECT_NEAR(psi_m.amplitude(1).real(), r, 1e-16);
  EXPECT_NEAR(psi_m.amplitude(2).real(), -r, 1e-16);
}

TEST(Bell, ProjectorsResolveIdentity) {
  ComplexMatrix sum(4);
  for (BellLabel b : BellLabel::all()) sum += bell_projector(b);
  EXPECT_LT(frobenius_distance(sum, ComplexMatrix::identity(4)), 1e-15);
}

TEST(Bell, ProductStatesFromBellStates) {
  // |00> = (Phi+ + Phi-)/r2, |11> = (Phi+ - Phi-)/r2, |01> = (Psi+ + Psi-)/r2,
  // |10> = (Psi+ - Psi-)/r2
  const double r = 1 / std::sqrt(2.0);
  auto combo = [&](BellLabel a, BellLabel b, double sign) {
    PureStateVector v(2);
    const PureStateVector first = bell_state(a), second = bell_state(b);
    for (const auto& [i, amp] : first.amplitudes()) v.add(i, r * amp);
    for (const auto& [i, amp] : second.amplitudes()) v.add(i, sign * r * amp);
    return v;
  };
  auto basis = [](std::uint64_t i) {
    PureStateVector v(2);
    v.add(i, 1.0);
    return v;
  };
  EXPECT_LT(vector_distance(combo(BellLabel::phi_plus(), BellLabel::phi_minus(), +1), basis(0)), 1e-15);
  EXPECT_LT(vector_distance(combo(BellLabel::phi_plus(), BellLabel::phi_minus(), -1), basis(3)), 1e-15);
  EXPECT_LT(vector_distance(combo(BellLabel::psi_plus(), BellLabel::psi_minus(), +1), basis(1)), 1e-15);
  EXPECT_LT(vector_distance(combo(BellLabel::psi_plus(), BellLabel::psi_minus(), -1), basis(2)), 1e-15);
}

TEST(BellLabel, GroupLaw) {
  for (BellLabel a : BellLabel::all()) {
    EXPECT_EQ(a ^ a, BellLabel::phi_plus());
    EXPECT_EQ(a ^ BellLabel::phi_plus(), a);
    EXPECT_EQ(BellLabel::from_index(a.index()), a);
    for (BellLabel b : BellLabel::all()) EXPECT_EQ(a ^ b, b ^ a);
  }
  EXPECT_EQ((BellLabel::phi_minus() ^ BellLabel::psi_plus()), BellLabel::psi_minus());
  EXPECT_EQ(BellLabel::psi_minus().name(), "Psi-");
}
