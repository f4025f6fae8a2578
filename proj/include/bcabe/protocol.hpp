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

// Exact simulation of the two activation protocols: pairwise Bell
// measurements on all but two qubits, and a joint four-outcome measurement
// of the class subspaces on all but two qubits. Every outcome branch is
// enumerated; nothing is sampled.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bcabe/basis.hpp"
#include "bcabe/config.hpp"
#include "bcabe/construct.hpp"
#include "bcabe/linalg.hpp"

namespace bcabe {

using QubitPair = std::pair<int, int>;

template <typename Label>
struct MeasurementOutcome {
  Label label;
  double probability = 0.0;
  /// State of the unmeasured qubits (ascending order); empty when the
  /// outcome probability is below the floor.
  std::optional<DensityMatrix> post_state;
};

struct BellFidelity {
  BellLabel label;
  double fidelity = 0.0;
};

/// Best Bell-state overlap of a two-qubit state. Ties go to the earlier
/// label in Phi+, Phi-, Psi+, Psi- order.
inline BellFidelity bell_fidelity(const DensityMatrix& rho2) {
  require(rho2.qubits() == 2, "bell_fidelity needs a two-qubit state");
  BellFidelity best{BellLabel::phi_plus(), -1.0};
  for (BellLabel b : BellLabel::all()) {
    const auto v = bell_state(b).entries();
    Complex f{};
    for (const auto& [i, a] : v)
      for (const auto& [j, c] : v) f += std::conj(a) * rho2(i, j) * c;
    if (f.real() > best.fidelity + 1e-12) best = {b, f.real()};
  }
  return best;
}

namespace detail {

inline void check_pair(int qubits, QubitPair pair) {
  require(pair.first >= 1 && pair.first <= qubits && pair.second >= 1 && pair.second <= qubits,
          "qubit index out of range");
  require(pair.first != pair.second, "pair must name two distinct qubits");
}

inline MeasurementOutcome<BellLabel> bell_outcome(const ComplexMatrix& m, int qubits,
                                                  QubitPair pair, BellLabel b,
                                                  const Tolerances& tol) {
  const int sub[2] = {pair.first, pair.second};
  ComplexMatrix reduced = contract_subsystem(m, qubits, sub, bell_state(b).entries());
  const double p = reduced.trace().real();
  MeasurementOutcome<BellLabel> out{b, std::max(p, 0.0), std::nullopt};
  if (p > tol.probability_floor)
    out.post_state = DensityMatrix::normalized(qubits - 2, std::move(reduced), tol);
  return out;
}

}  // namespace detail

/// Projective Bell measurement on `pair` (first index is the more
/// significant qubit of the Bell vector). Four outcomes in canonical label
/// order; post-states live on the other qubits in ascending order.
inline std::vector<MeasurementOutcome<BellLabel>> bell_measure(
    const DensityMatrix& rho, QubitPair pair, const Tolerances& tol = kDefaultTolerances) {
  require(rho.qubits() >= 3, "bell_measure needs at least one unmeasured qubit");
  detail::check_pair(rho.qubits(), pair);
  std::vector<MeasurementOutcome<BellLabel>> outcomes;
  for (BellLabel b : BellLabel::all())
    outcomes.push_back(detail::bell_outcome(rho.matrix(), rho.qubits(), pair, b, tol));
  return outcomes;
}

struct UnlockBranch {
  std::vector<BellLabel> labels;  // one per measured pair, in pairing order
  double probability = 0.0;
  std::optional<DensityMatrix> final_state;  // kept pair, ascending order
  BellLabel best_label;
  double fidelity = 0.0;
};

struct UnlockResult {
  QubitPair kept;
  std::vector<QubitPair> pairing;
  std::vector<UnlockBranch> branches;

  double total_probability() const {
    double s = 0.0;
    for (const auto& b : branches) s += b.probability;
    return s;
  }

  /// Smallest fidelity over branches that carry a state.
  double min_fidelity() const {
    double m = 1.0;
    for (const auto& b : branches)
      if (b.final_state) m = std::min(m, b.fidelity);
    return m;
  }

  double max_fidelity() const {
    double m = 0.0;
    for (const auto& b : branches)
      if (b.final_state) m = std::max(m, b.fidelity);
    return m;
  }
};

/// Ascending disjoint pairs of the qubits outside `keep`.
inline std::vector<QubitPair> default_pairing(int qubits, QubitPair keep) {
  std::vector<int> rest;
  for (int q = 1; q <= qubits; ++q)
    if (q != keep.first && q != keep.second) rest.push_back(q);
  std::vector<QubitPair> pairs;
  for (std::size_t k = 0; k + 1 < rest.size(); k += 2) pairs.emplace_back(rest[k], rest[k + 1]);
  return pairs;
}

/// Bell-measures every pair in `pairing` in turn and records the state left
/// on `keep` for each of the 4^(#pairs) outcome strings. Without a pairing
/// the non-kept qubits are paired in ascending order.
inline UnlockResult unlock_sequential(const DensityMatrix& rho, QubitPair keep,
                                      std::optional<std::vector<QubitPair>> pairing = std::nullopt,
                                      const Tolerances& tol = kDefaultTolerances) {
  const int n = rho.qubits();
  require(n >= 4 && n % 2 == 0, "unlock_sequential needs an even qubit count of at least 4");
  detail::check_pair(n, keep);
  if (keep.first > keep.second) std::swap(keep.first, keep.second);

  std::vector<QubitPair> pairs = pairing ? *pairing : default_pairing(n, keep);
  {
    std::vector<int> covered = {keep.first, keep.second};
    for (const auto& p : pairs) {
      detail::check_pair(n, p);
      covered.push_back(p.first);
      covered.push_back(p.second);
    }
    std::sort(covered.begin(), covered.end());
    bool exact = static_cast<int>(covered.size()) == n;
    for (int k = 0; exact && k < n; ++k) exact = covered[k] == k + 1;
    require(exact, "pairing must cover every non-kept qubit exactly once");
  }

  UnlockResult result{keep, pairs, {}};
  std::vector<BellLabel> labels;

  // Depth-first in canonical label order; `alive` maps current positions to
  // original qubit indices.
  auto descend = [&](auto&& self, const std::optional<DensityMatrix>& state,
                     const std::vector<int>& alive, double probability,
                     std::size_t depth) -> void {
    if (depth == pairs.size()) {
      UnlockBranch branch{labels, probability, std::nullopt, BellLabel::phi_plus(), 0.0};
      if (state) {
        branch.final_state = *state;
        const BellFidelity f = bell_fidelity(*state);
        branch.best_label = f.label;
        branch.fidelity = f.fidelity;
      }
      result.branches.push_back(std::move(branch));
      return;
    }
    const auto position = [&](int original) {
      return static_cast<int>(std::find(alive.begin(), alive.end(), original) - alive.begin()) + 1;
    };
    std::vector<int> next_alive;
    for (int q : alive)
      if (q != pairs[depth].first && q != pairs[depth].second) next_alive.push_back(q);
    const QubitPair local{position(pairs[depth].first), position(pairs[depth].second)};
    for (BellLabel b : BellLabel::all()) {
      labels.push_back(b);
      if (state) {
        auto outcome = detail::bell_outcome(state->matrix(), state->qubits(), local, b, tol);
        self(self, outcome.post_state, next_alive, probability * outcome.probability, depth + 1);
      } else {
        self(self, std::nullopt, next_alive, 0.0, depth + 1);
      }
      labels.pop_back();
    }
  };

  std::vector<int> all(n);
  for (int q = 1; q <= n; ++q) all[q - 1] = q;
  descend(descend, std::optional<DensityMatrix>(rho), all, 1.0, 0);
  return result;
}

inline BellLabel xor_of(const std::vector<BellLabel>& labels) {
  BellLabel acc = BellLabel::phi_plus();
  for (BellLabel b : labels) acc = acc ^ b;
  return acc;
}

/// For a class state: every populated branch leaves the Bell state
/// cls ^ (XOR of the measured labels) with fidelity 1.
inline bool xor_rule_holds(const UnlockResult& result, StateClass cls,
                           const Tolerances& tol = kDefaultTolerances) {
  for (const auto& b : result.branches) {
    if (!b.final_state) continue;
    if (b.fidelity < 1.0 - tol.fidelity) return false;
    if (b.best_label != (cls.label() ^ xor_of(b.labels))) return false;
  }
  return true;
}

/// GHZ vectors spanning the class subspace on m qubits (Bell vector for
/// m = 2).
inline std::vector<PureStateVector> class_basis(StateClass cls, int m) {
  require(m >= 2 && m % 2 == 0, "class subspaces exist only for even qubit counts");
  const auto strings = cls.family() == StateClass::Family::Rho ? enumerate_p_strings(m)
                                                               : enumerate_q_strings(m);
  std::vector<PureStateVector> out;
  out.reserve(strings.size());
  for (const auto& s : strings) out.push_back(ghz_state(s, cls.sign()));
  return out;
}

/// Four-outcome measurement of {P+, P-, Q+, Q-} on `group`, which must be
/// every qubit except one pair. Outcomes come in rho+, rho-, sigma+, sigma-
/// order; post-states are two-qubit states of the remaining pair.
inline std::vector<MeasurementOutcome<StateClass>> discriminate_subspace(
    const DensityMatrix& rho, std::vector<int> group, const Tolerances& tol = kDefaultTolerances) {
  const int n = rho.qubits();
  require(n >= 4 && n % 2 == 0, "discriminate_subspace needs an even qubit count of at least 4");
  std::sort(group.begin(), group.end());
  require(static_cast<int>(group.size()) == n - 2,
          "measured group must contain every qubit except one pair");
  detail::mask_of(n, group);

  std::vector<MeasurementOutcome<StateClass>> outcomes;
  for (StateClass c : StateClass::all()) {
    ComplexMatrix reduced(4);
    for (const auto& v : class_basis(c, n - 2))
      reduced += contract_subsystem(rho.matrix(), n, group, v.entries());
    const double p = reduced.trace().real();
    MeasurementOutcome<StateClass> out{c, std::max(p, 0.0), std::nullopt};
    if (p > tol.probability_floor) out.post_state = DensityMatrix::normalized(2, std::move(reduced), tol);
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

/// discriminate_subspace on the complement of `keep`.
inline std::vector<MeasurementOutcome<StateClass>> discriminate_keeping(
    const DensityMatrix& rho, QubitPair keep, const Tolerances& tol = kDefaultTolerances) {
  detail::check_pair(rho.qubits(), keep);
  std::vector<int> group;
  for (int q = 1; q <= rho.qubits(); ++q)
    if (q != keep.first && q != keep.second) group.push_back(q);
  return discriminate_subspace(rho, std::move(group), tol);
}

}  // namespace bcabe
