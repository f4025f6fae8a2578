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

// The four Bell-correlated subspace states rho+, rho-, sigma+, sigma- on an
// even number of qubits, their noisy mixtures, and the two-qubit
// Bell-diagonal states those mixtures reduce to.
//
// Three independent builders are provided for the class states:
//   projector_direct     sums GHZ projectors over the parity family
//   pauli_relate         conjugates rho+ by one Pauli on the last qubit
//   projector_recursive  peels qubits (1,2) as a Bell pair and recurses
// and they must agree.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include "bcabe/basis.hpp"
#include "bcabe/config.hpp"
#include "bcabe/format.hpp"
#include "bcabe/linalg.hpp"

namespace bcabe {

/// One of rho+, rho-, sigma+, sigma-. Carried as a BellLabel: rho is the
/// Phi (even) family, sigma the Psi (odd) family, the phase bit is the sign.
class StateClass {
 public:
  enum class Family { Rho, Sigma };

  constexpr StateClass() = default;
  constexpr explicit StateClass(BellLabel label) : label_(label) {}
  constexpr StateClass(Family family, int sign)
      : label_{static_cast<std::uint8_t>(family == Family::Sigma),
               static_cast<std::uint8_t>(sign < 0)} {}

  static constexpr StateClass rho_plus() { return StateClass(BellLabel::phi_plus()); }
  static constexpr StateClass rho_minus() { return StateClass(BellLabel::phi_minus()); }
  static constexpr StateClass sigma_plus() { return StateClass(BellLabel::psi_plus()); }
  static constexpr StateClass sigma_minus() { return StateClass(BellLabel::psi_minus()); }

  /// rho+, rho-, sigma+, sigma-
  static constexpr std::array<StateClass, 4> all() {
    return {rho_plus(), rho_minus(), sigma_plus(), sigma_minus()};
  }

  static StateClass parse(std::string_view text) {
    for (StateClass c : all())
      if (c.name() == text) return c;
    throw PreconditionError("unknown state class '" + std::string(text) +
                            "' (expected rho+, rho-, sigma+ or sigma-)");
  }

  constexpr BellLabel label() const { return label_; }
  constexpr Family family() const { return label_.parity ? Family::Sigma : Family::Rho; }
  constexpr int sign() const { return label_.phase ? -1 : 1; }
  constexpr int index() const { return label_.index(); }

  std::string name() const {
    return std::string(family() == Family::Rho ? "rho" : "sigma") + (sign() > 0 ? "+" : "-");
  }

  friend constexpr StateClass operator^(StateClass c, BellLabel b) {
    return StateClass(c.label_ ^ b);
  }
  friend constexpr bool operator==(StateClass, StateClass) = default;

 private:
  BellLabel label_{};
};

/// Class of the inner (n-2)-qubit state paired with Bell label `bell` on
/// the peeled pair. Covers the rho+, rho- and sigma+- recursions at once.
constexpr StateClass inner_class(StateClass outer, BellLabel bell) { return outer ^ bell; }

/// Mixture weights (x+, x-, y+, y-) of rho+, rho-, sigma+, sigma-.
class NoisyWeights {
 public:
  NoisyWeights(double x_plus, double x_minus, double y_plus, double y_minus)
      : w_{x_plus, x_minus, y_plus, y_minus} {
    double sum = 0.0;
    for (double v : w_) {
      require(std::isfinite(v) && v >= 0.0 && v <= 1.0, "noisy weights must lie in [0, 1]");
      sum += v;
    }
    require(std::abs(sum - 1.0) <= 1e-12, "noisy weights must sum to 1");
  }

  static NoisyWeights pure(StateClass c) {
    std::array<double, 4> w{};
    w[c.index()] = 1.0;
    return NoisyWeights(w[0], w[1], w[2], w[3]);
  }

  /// (w, 1-w, 0, 0)
  static NoisyWeights two_term(double w) { return NoisyWeights(w, 1.0 - w, 0.0, 0.0); }
  /// (w, (1-w)/3, (1-w)/3, (1-w)/3)
  static NoisyWeights werner(double w) {
    const double r = (1.0 - w) / 3.0;
    return NoisyWeights(w, r, r, 1.0 - w - 2.0 * r);
  }

  double x_plus() const { return w_[0]; }
  double x_minus() const { return w_[1]; }
  double y_plus() const { return w_[2]; }
  double y_minus() const { return w_[3]; }
  double weight(StateClass c) const { return w_[c.index()]; }
  double max_weight() const { return *std::max_element(w_.begin(), w_.end()); }
  const std::array<double, 4>& values() const { return w_; }

  std::string to_string() const {
    return "noisy x+=" + format_double(w_[0]) + " x-=" + format_double(w_[1]) +
           " y+=" + format_double(w_[2]) + " y-=" + format_double(w_[3]);
  }

 private:
  std::array<double, 4> w_;
};

namespace detail {

inline void check_even_qubits(int n, int min_qubits, int max_qubits) {
  require(n % 2 == 0, "qubit count must be even (odd counts are not supported), got " +
                          std::to_string(n));
  require(n >= min_qubits, "qubit count must be at least " + std::to_string(min_qubits));
  require(n <= max_qubits, "qubit count " + std::to_string(n) + " exceeds the limit of " +
                               std::to_string(max_qubits));
}

}  // namespace detail

/// Normalized projector onto the span of the class's GHZ family. For n = 2
/// this is the matching Bell projector.
inline DensityMatrix projector_direct(StateClass cls, int n, int max_qubits = kDefaultMaxQubits) {
  detail::check_even_qubits(n, 2, max_qubits);
  const auto strings = cls.family() == StateClass::Family::Rho ? enumerate_p_strings(n)
                                                               : enumerate_q_strings(n);
  const double weight = 0.5 / static_cast<double>(strings.size());
  const double sign = cls.sign();
  ComplexMatrix m(std::size_t{1} << n);
  for (const BitString& s : strings) {
    const std::size_t x = s.value();
    const std::size_t xb = s.complement().value();
    m(x, x) += weight;
    m(xb, xb) += weight;
    m(x, xb) += sign * weight;
    m(xb, x) += sign * weight;
  }
  return DensityMatrix(n, std::move(m));
}

/// Pauli taking rho+ to `target` when applied on the last qubit: Z for
/// rho-, X for sigma+, Y for sigma-, identity for rho+.
constexpr Pauli relating_pauli(StateClass target) {
  const BellLabel l = target.label();
  if (l.parity && l.phase) return Pauli::Y;
  if (l.parity) return Pauli::X;
  if (l.phase) return Pauli::Z;
  return Pauli::I;
}

/// Conjugates `base` (expected to be rho+) by relating_pauli(target) on the
/// last qubit.
inline DensityMatrix pauli_relate(const DensityMatrix& base, StateClass target) {
  const Pauli p = relating_pauli(target);
  if (p == Pauli::I) return base;
  return DensityMatrix(base.qubits(), conjugate_single_qubit(base.matrix(), base.qubits(),
                                                             base.qubits(), pauli_matrix(p)));
}

/// All four class states at n qubits from the Bell-correlated recursion
/// rho_c(n) = 1/4 sum_b [b]_{12} (x) rho_{c^b}(n-2), starting from the Bell
/// projectors at n = 2. Indexed by StateClass::index().
inline std::array<DensityMatrix, 4> recursive_family(int n, int max_qubits = kDefaultMaxQubits) {
  detail::check_even_qubits(n, 2, max_qubits);
  std::array<ComplexMatrix, 4> bell;
  for (BellLabel b : BellLabel::all()) bell[b.index()] = bell_projector(b);

  std::array<ComplexMatrix, 4> level = bell;
  for (int m = 4; m <= n; m += 2) {
    std::array<ComplexMatrix, 4> next;
    for (StateClass c : StateClass::all()) {
      ComplexMatrix sum(std::size_t{1} << m);
      for (BellLabel b : BellLabel::all())
        sum += tensor(bell[b.index()], level[inner_class(c, b).index()]);
      sum *= 0.25;
      next[c.index()] = std::move(sum);
    }
    level = std::move(next);
  }
  return {DensityMatrix(n, std::move(level[0])), DensityMatrix(n, std::move(level[1])),
          DensityMatrix(n, std::move(level[2])), DensityMatrix(n, std::move(level[3]))};
}

inline DensityMatrix projector_recursive(StateClass cls, int n,
                                         int max_qubits = kDefaultMaxQubits) {
  detail::check_even_qubits(n, 2, max_qubits);
  return recursive_family(n, max_qubits)[cls.index()];
}

/// x+ rho+ + x- rho- + y+ sigma+ + y- sigma-
inline DensityMatrix noisy_state(const NoisyWeights& w, int n, int max_qubits = kDefaultMaxQubits) {
  detail::check_even_qubits(n, 2, max_qubits);
  ComplexMatrix m(std::size_t{1} << n);
  for (StateClass c : StateClass::all())
    if (w.weight(c) != 0.0) m += projector_direct(c, n, max_qubits).matrix() * Complex(w.weight(c));
  return DensityMatrix(n, std::move(m));
}

enum class BellDiagonalFamily { Pi, Gamma };

/// Pi+- = x+[Phi+-] + x-[Phi-+] + y+[Psi+-] + y-[Psi-+],
/// Gamma+- = x+[Psi+-] + x-[Psi-+] + y+[Phi+-] + y-[Phi-+].
/// Equivalently the weight of class c sits on Bell label c ^ offset with
/// offset = (Gamma ? 1 : 0, sign < 0 ? 1 : 0).
inline DensityMatrix bell_diagonal(const NoisyWeights& w, BellDiagonalFamily family, int sign) {
  require(sign == 1 || sign == -1, "bell_diagonal: sign must be +1 or -1");
  const BellLabel offset{static_cast<std::uint8_t>(family == BellDiagonalFamily::Gamma),
                         static_cast<std::uint8_t>(sign < 0)};
  ComplexMatrix m(4);
  for (StateClass c : StateClass::all())
    if (w.weight(c) != 0.0) m += bell_projector(c.label() ^ offset) * Complex(w.weight(c));
  return DensityMatrix(2, std::move(m));
}

/// Two-qubit state left on the kept pair when the other qubits of a noisy
/// state are found in class `inner`: Pi for rho outcomes, Gamma for sigma.
inline DensityMatrix bell_diagonal_for_outcome(const NoisyWeights& w, StateClass inner) {
  return bell_diagonal(w,
                       inner.family() == StateClass::Family::Rho ? BellDiagonalFamily::Pi
                                                                 : BellDiagonalFamily::Gamma,
                       inner.sign());
}

/// A class state or a noisy mixture at a given size, as named in reports
/// ("rho+ n=4", "noisy x+=... n=6").
struct StateDescriptor {
  std::variant<StateClass, NoisyWeights> kind;
  int qubits;

  bool is_class() const { return std::holds_alternative<StateClass>(kind); }

  std::string to_string() const {
    std::string head = is_class() ? std::get<StateClass>(kind).name()
                                  : std::get<NoisyWeights>(kind).to_string();
    return head + " n=" + std::to_string(qubits);
  }

  DensityMatrix build(int max_qubits = kDefaultMaxQubits) const {
    if (is_class()) return projector_direct(std::get<StateClass>(kind), qubits, max_qubits);
    return noisy_state(std::get<NoisyWeights>(kind), qubits, max_qubits);
  }
};

}  // namespace bcabe
