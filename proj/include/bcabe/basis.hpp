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

// Parity-classified bit strings, the GHZ (cat) basis built on them, and the
// two-qubit Bell basis.

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bcabe/config.hpp"
#include "bcabe/linalg.hpp"

namespace bcabe {

/// n-bit string; bit 1 (leftmost) is the most significant bit of value().
class BitString {
 public:
  BitString(int length, std::uint64_t value) : length_(length), value_(value) {
    require(length >= 1 && length < 64, "bit string length out of range");
    require(value < (std::uint64_t{1} << length), "bit string value exceeds its length");
  }

  static BitString parse(std::string_view text) {
    require(!text.empty() && text.size() < 64, "bit string length out of range");
    std::uint64_t v = 0;
    for (char ch : text) {
      require(ch == '0' || ch == '1', "bit string must contain only 0 and 1");
      v = (v << 1) | std::uint64_t(ch == '1');
    }
    return BitString(static_cast<int>(text.size()), v);
  }

  int length() const { return length_; }
  std::uint64_t value() const { return value_; }
  int bit(int position) const { return int((value_ >> (length_ - position)) & 1u); }
  int zero_count() const { return length_ - std::popcount(value_); }

  BitString complement() const {
    return BitString(length_, ~value_ & ((std::uint64_t{1} << length_) - 1));
  }

  std::string to_string() const {
    std::string s(length_, '0');
    for (int k = 0; k < length_; ++k)
      if (bit(k + 1)) s[k] = '1';
    return s;
  }

  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  int length_;
  std::uint64_t value_;
};

namespace detail {

inline std::vector<BitString> enumerate_by_zero_parity(int n, int parity) {
  require(n >= 2 && n % 2 == 0 && n < 64, "qubit count must be even and at least 2");
  std::vector<BitString> out;
  // Leading bit 0 means the value is below 2^(n-1); ascending value order is
  // lexicographic order.
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << (n - 1)); ++v) {
    BitString s(n, v);
    if (s.zero_count() % 2 == parity) out.push_back(s);
  }
  return out;
}

}  // namespace detail

/// Strings with leading 0 and an even number of 0s; 2^(n-2) of them.
inline std::vector<BitString> enumerate_p_strings(int n) {
  return detail::enumerate_by_zero_parity(n, 0);
}

/// Strings with leading 0 and an odd number of 0s; 2^(n-2) of them.
inline std::vector<BitString> enumerate_q_strings(int n) {
  return detail::enumerate_by_zero_parity(n, 1);
}

/// Sparse pure state over n qubits.
class PureStateVector {
 public:
  explicit PureStateVector(int qubits) : qubits_(qubits) {
    require(qubits >= 1 && qubits < 63, "qubit count out of range");
  }

  int qubits() const { return qubits_; }
  const std::map<std::uint64_t, Complex>& amplitudes() const { return amplitudes_; }

  void add(std::uint64_t index, Complex amplitude) {
    require(index < (std::uint64_t{1} << qubits_), "basis index out of range");
    amplitudes_[index] += amplitude;
  }

  Complex amplitude(std::uint64_t index) const {
    auto it = amplitudes_.find(index);
    return it == amplitudes_.end() ? Complex{} : it->second;
  }

  std::size_t nonzero_count() const {
    std::size_t c = 0;
    for (const auto& [_, a] : amplitudes_) c += a != Complex{};
    return c;
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& [_, a] : amplitudes_) s += std::norm(a);
    return s;
  }

  SparseAmplitudes entries() const { return {amplitudes_.begin(), amplitudes_.end()}; }

  std::vector<Complex> dense() const {
    std::vector<Complex> v(std::size_t{1} << qubits_);
    for (const auto& [i, a] : amplitudes_) v[i] = a;
    return v;
  }

  /// |psi><psi| as a dense matrix.
  ComplexMatrix projector() const {
    ComplexMatrix m(std::size_t{1} << qubits_);
    for (const auto& [i, a] : amplitudes_)
      for (const auto& [j, b] : amplitudes_) m(i, j) += a * std::conj(b);
    return m;
  }

  DensityMatrix density() const { return DensityMatrix(qubits_, projector()); }

 private:
  int qubits_;
  std::map<std::uint64_t, Complex> amplitudes_;
};

/// <a|b>
inline Complex inner_product(const PureStateVector& a, const PureStateVector& b) {
  require(a.qubits() == b.qubits(), "inner_product: qubit count mismatch");
  Complex s{};
  for (const auto& [i, amp] : a.amplitudes()) s += std::conj(amp) * b.amplitude(i);
  return s;
}

inline double vector_distance(const PureStateVector& a, const PureStateVector& b) {
  require(a.qubits() == b.qubits(), "vector_distance: qubit count mismatch");
  double s = 0.0;
  for (const auto& [i, amp] : a.amplitudes()) s += std::norm(amp - b.amplitude(i));
  for (const auto& [i, amp] : b.amplitudes())
    if (!a.amplitudes().contains(i)) s += std::norm(amp);
  return std::sqrt(s);
}

/// (|s> + sign |s-bar>) / sqrt(2).
inline PureStateVector ghz_state(const BitString& s, int sign) {
  require(sign == 1 || sign == -1, "ghz_state: sign must be +1 or -1");
  const double r = 1.0 / std::sqrt(2.0);
  PureStateVector v(s.length());
  v.add(s.value(), r);
  v.add(s.complement().value(), sign * r);
  return v;
}

/// Element of Z2 x Z2: parity (Phi = 0, Psi = 1) and phase (+ = 0, - = 1).
/// XOR is the group law.
struct BellLabel {
  std::uint8_t parity = 0;
  std::uint8_t phase = 0;

  static constexpr BellLabel phi_plus() { return {0, 0}; }
  static constexpr BellLabel phi_minus() { return {0, 1}; }
  static constexpr BellLabel psi_plus() { return {1, 0}; }
  static constexpr BellLabel psi_minus() { return {1, 1}; }

  /// Canonical order Phi+, Phi-, Psi+, Psi-.
  static constexpr std::array<BellLabel, 4> all() {
    return {phi_plus(), phi_minus(), psi_plus(), psi_minus()};
  }
  static constexpr BellLabel from_index(int k) {
    return {static_cast<std::uint8_t>((k >> 1) & 1), static_cast<std::uint8_t>(k & 1)};
  }

  constexpr int index() const { return parity * 2 + phase; }

  std::string name() const {
    static constexpr std::array<const char*, 4> kNames = {"Phi+", "Phi-", "Psi+", "Psi-"};
    return kNames[index()];
  }

  friend constexpr BellLabel operator^(BellLabel a, BellLabel b) {
    return {static_cast<std::uint8_t>(a.parity ^ b.parity),
            static_cast<std::uint8_t>(a.phase ^ b.phase)};
  }
  friend constexpr bool operator==(BellLabel, BellLabel) = default;
};

inline PureStateVector bell_state(BellLabel label) {
  return ghz_state(BitString(2, label.parity), label.phase ? -1 : 1);
}

inline ComplexMatrix bell_projector(BellLabel label) { return bell_state(label).projector(); }

}  // namespace bcabe
