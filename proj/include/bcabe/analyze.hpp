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

// Entanglement diagnostics: per-cut PPT verdicts and negativity, the
// constructive two-vs-rest separable form, permutation symmetry, the
// Bell-diagonal w > 1/2 rule, and a combined activable-bound-entanglement
// report.

#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "bcabe/basis.hpp"
#include "bcabe/config.hpp"
#include "bcabe/construct.hpp"
#include "bcabe/linalg.hpp"
#include "bcabe/protocol.hpp"

namespace bcabe {

struct CutVerdict {
  Bipartition cut;
  double min_eigenvalue = 0.0;
  bool ppt = true;
  double negativity = 0.0;  // sum of |negative eigenvalues| beyond the PPT threshold
};

/// Eigenvalues of the partial transpose count as nonnegative down to
/// -tol.ppt * ||PT||_1.
inline CutVerdict is_ppt(const DensityMatrix& rho, const Bipartition& cut,
                         const Tolerances& tol = kDefaultTolerances) {
  const ComplexMatrix pt = partial_transpose(rho, cut);
  const auto values = hermitian_eigenvalues(pt, tol);
  const double threshold = -tol.ppt * std::max(1.0, pt.one_norm());
  CutVerdict v{cut, values.front(), values.front() >= threshold, 0.0};
  for (double x : values)
    if (x < threshold) v.negativity -= x;
  return v;
}

/// Unordered bipartitions, by left-side size then lexicographically. When
/// both sides have equal size only the side containing qubit 1 is listed.
inline std::vector<Bipartition> enumerate_bipartitions(int qubits) {
  require(qubits >= 2 && qubits < 31, "enumerate_bipartitions: qubit count out of range");
  std::vector<Bipartition> cuts;
  for (int k = 1; 2 * k <= qubits; ++k) {
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i + 1;
    while (true) {
      if (2 * k < qubits || pick[0] == 1) cuts.emplace_back(qubits, pick);
      int i = k - 1;
      while (i >= 0 && pick[i] == qubits - k + i + 1) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return cuts;
}

struct ScanOptions {
  enum class Mode { Exhaustive, Sampled };
  Mode mode = Mode::Exhaustive;
  std::uint64_t seed = 0;
  int samples_per_size = 2;  // random extra cuts per size in sampled mode
  unsigned threads = 1;
};

inline constexpr int kMaxExhaustiveQubits = 8;

/// Sampled-mode cut set: {1..k} for every k, plus seeded random k-subsets.
/// Relies on permutation symmetry of the state for coverage.
inline std::vector<Bipartition> sampled_bipartitions(int qubits, const ScanOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<Bipartition> cuts;
  for (int k = 1; 2 * k <= qubits; ++k) {
    std::set<std::vector<int>> chosen;
    std::vector<int> first(k);
    for (int i = 0; i < k; ++i) first[i] = i + 1;
    chosen.insert(first);
    std::vector<int> all(qubits);
    for (int i = 0; i < qubits; ++i) all[i] = i + 1;
    for (int s = 0; s < options.samples_per_size; ++s) {
      std::shuffle(all.begin(), all.end(), rng);
      std::vector<int> pick(all.begin(), all.begin() + k);
      std::sort(pick.begin(), pick.end());
      if (2 * k == qubits && pick[0] != 1) pick = detail::complement(qubits, pick);
      chosen.insert(pick);
    }
    for (const auto& c : chosen) cuts.emplace_back(qubits, c);
  }
  return cuts;
}

/// One verdict per bipartition, in enumerate_bipartitions order (or the
/// sampled order). Results do not depend on the thread count.
inline std::vector<CutVerdict> scan_all_cuts(const DensityMatrix& rho,
                                             const ScanOptions& options = {},
                                             const Tolerances& tol = kDefaultTolerances) {
  std::vector<Bipartition> cuts;
  if (options.mode == ScanOptions::Mode::Exhaustive) {
    require(rho.qubits() <= kMaxExhaustiveQubits,
            "exhaustive cut scan is limited to " + std::to_string(kMaxExhaustiveQubits) +
                " qubits; use sampled mode");
    cuts = enumerate_bipartitions(rho.qubits());
  } else {
    cuts = sampled_bipartitions(rho.qubits(), options);
  }

  std::vector<std::optional<CutVerdict>> slots(cuts.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, cuts.size()));
  if (workers == 1) {
    for (std::size_t k = 0; k < cuts.size(); ++k) slots[k] = is_ppt(rho, cuts[k], tol);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < cuts.size(); k += workers) slots[k] = is_ppt(rho, cuts[k], tol);
      });
  }
  std::vector<CutVerdict> out;
  out.reserve(cuts.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// rho = sum_b weights[b] [Bell_b]_pair (x) factors[b]; each term is a
/// product across pair | rest. factors act on the other qubits in
/// ascending order and are empty where the weight is below the floor.
struct SeparabilityCertificate {
  QubitPair pair;
  std::array<double, 4> weights{};
  std::array<std::optional<DensityMatrix>, 4> factors;
  double reconstruction_error = 0.0;
  double min_factor_eigenvalue = 0.0;
};

struct CertificateResult {
  std::optional<SeparabilityCertificate> certificate;
  std::string failure;
  explicit operator bool() const { return certificate.has_value(); }
};

/// Attempts the Bell-correlated four-term decomposition across the cut
/// {pair} | rest. Success is a constructive separability witness for that
/// cut; failure says only that this particular form does not fit.
inline CertificateResult certify_two_vs_rest_separable(const DensityMatrix& rho, QubitPair pair,
                                                       const Tolerances& tol = kDefaultTolerances) {
  const int n = rho.qubits();
  require(n >= 3, "two-vs-rest certificate needs at least three qubits");
  detail::check_pair(n, pair);

  SeparabilityCertificate cert;
  cert.pair = pair;
  cert.min_factor_eigenvalue = 1.0;
  const int sub[2] = {pair.first, pair.second};
  ComplexMatrix rebuilt(rho.dim());
  for (BellLabel b : BellLabel::all()) {
    ComplexMatrix tau = contract_subsystem(rho.matrix(), n, sub, bell_state(b).entries());
    const double w = tau.trace().real();
    if (w < -tol.certificate) return {std::nullopt, "negative weight on " + b.name()};
    cert.weights[b.index()] = std::max(w, 0.0);
    if (w <= tol.probability_floor) continue;
    tau *= 1.0 / w;
    if (!tau.is_hermitian(1e-10)) return {std::nullopt, "non-Hermitian factor on " + b.name()};
    const double lo = hermitian_eigenvalues(tau, tol).front();
    cert.min_factor_eigenvalue = std::min(cert.min_factor_eigenvalue, lo);
    if (lo < -tol.ppt * std::max(1.0, tau.one_norm()))
      return {std::nullopt, "factor for " + b.name() + " is not positive semidefinite"};
    rebuilt += tensor(bell_projector(b), tau) * Complex(w);
    cert.factors[b.index()] = DensityMatrix(n - 2, std::move(tau));
  }

  // rebuilt is ordered (pair.first, pair.second, rest...); move each slot
  // back to its original qubit.
  std::vector<int> perm = {pair.first, pair.second};
  for (int q : detail::complement(n, sub)) perm.push_back(q);
  rebuilt = apply_qubit_permutation(rebuilt, n, perm);
  cert.reconstruction_error = frobenius_distance(rebuilt, rho.matrix());
  if (cert.reconstruction_error >= tol.certificate)
    return {std::nullopt, "Bell-correlated form does not reconstruct the state (error " +
                              format_double(cert.reconstruction_error) + ")"};
  return {std::move(cert), {}};
}

struct PermutationCheck {
  bool invariant = true;
  double max_deviation = 0.0;
};

/// Largest Frobenius change under any qubit transposition.
inline PermutationCheck check_permutation_invariance(const DensityMatrix& rho,
                                                     const Tolerances& tol = kDefaultTolerances) {
  PermutationCheck out;
  const int n = rho.qubits();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      const auto perm = transposition(n, a, b);
      const double d = frobenius_distance(
          apply_qubit_permutation(rho.matrix(), n, perm), rho.matrix());
      out.max_deviation = std::max(out.max_deviation, d);
    }
  out.invariant = out.max_deviation < tol.permutation;
  return out;
}

struct BellDiagonalVerdict {
  bool entangled = false;
  double w_max = 0.0;
  double min_pt_eigenvalue = 0.0;  // of Pi+ across 1|2
  bool ppt_agrees = true;          // NPT of Pi+ <=> w_max > 1/2
};

/// Two-qubit Bell-diagonal states are entangled (and distillable) exactly
/// when the largest weight exceeds 1/2. Cross-checked with the PPT test.
inline BellDiagonalVerdict bell_diagonal_entangled(const NoisyWeights& w,
                                                   const Tolerances& tol = kDefaultTolerances) {
  BellDiagonalVerdict v;
  v.w_max = w.max_weight();
  v.entangled = v.w_max > 0.5;
  const DensityMatrix pi = bell_diagonal(w, BellDiagonalFamily::Pi, 1);
  const CutVerdict cut = is_ppt(pi, Bipartition(2, {1}), tol);
  v.min_pt_eigenvalue = cut.min_eigenvalue;
  v.ppt_agrees = (!cut.ppt) == v.entangled;
  return v;
}

struct ClassifyOptions {
  ScanOptions scan;
  QubitPair keep{1, 2};
};

struct AbeReport {
  std::string descriptor;
  int qubits = 0;
  std::vector<CutVerdict> cuts;
  bool permutation_invariant = false;
  double permutation_deviation = 0.0;
  bool two_vs_rest_separable_certified = false;
  bool two_vs_rest_ppt = false;
  std::vector<std::string> certificate_failures;
  bool has_npt_cut = false;
  bool activation_by_bell_measurements = false;
  bool activation_by_discrimination = false;
  double unlocked_min_fidelity = 0.0;
  bool activable = false;
  Tolerances tolerances;
  std::vector<std::pair<std::string, double>> phase_seconds;
};

/// Runs the full checklist. activable requires an NPT cut, a certified
/// separable form with PPT confirmation on every two-vs-rest cut, and both
/// activation protocols leaving an NPT (hence distillable) pair in every
/// populated branch.
inline AbeReport classify_abe(const DensityMatrix& rho, const std::string& descriptor,
                              const ClassifyOptions& options = {},
                              const Tolerances& tol = kDefaultTolerances) {
  const int n = rho.qubits();
  require(n >= 4 && n % 2 == 0 && n <= kHardMaxQubits,
          "classify_abe needs an even qubit count between 4 and " + std::to_string(kHardMaxQubits));
  AbeReport r;
  r.descriptor = descriptor;
  r.qubits = n;
  r.tolerances = tol;
  using Clock = std::chrono::steady_clock;
  auto mark = Clock::now();
  auto phase = [&](const char* name) {
    const auto now = Clock::now();
    r.phase_seconds.emplace_back(name, std::chrono::duration<double>(now - mark).count());
    mark = now;
  };

  ScanOptions scan = options.scan;
  if (n > kMaxExhaustiveQubits) scan.mode = ScanOptions::Mode::Sampled;
  r.cuts = scan_all_cuts(rho, scan, tol);
  r.has_npt_cut = std::any_of(r.cuts.begin(), r.cuts.end(), [](const CutVerdict& v) { return !v.ppt; });
  phase("cut_scan");

  const auto perm = check_permutation_invariance(rho, tol);
  r.permutation_invariant = perm.invariant;
  r.permutation_deviation = perm.max_deviation;
  phase("permutation");

  r.two_vs_rest_separable_certified = true;
  r.two_vs_rest_ppt = true;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      const auto result = certify_two_vs_rest_separable(rho, {a, b}, tol);
      if (!result) {
        r.two_vs_rest_separable_certified = false;
        r.certificate_failures.push_back("(" + std::to_string(a) + "," + std::to_string(b) +
                                         "): " + result.failure);
      }
      if (!is_ppt(rho, Bipartition(n, {a, b}), tol).ppt) r.two_vs_rest_ppt = false;
    }
  phase("two_vs_rest");

  const auto pair_npt = [&](const DensityMatrix& s) {
    return !is_ppt(s, Bipartition(2, {1}), tol).ppt;
  };
  const UnlockResult unlock = unlock_sequential(rho, options.keep, std::nullopt, tol);
  r.unlocked_min_fidelity = unlock.min_fidelity();
  r.activation_by_bell_measurements = std::all_of(
      unlock.branches.begin(), unlock.branches.end(),
      [&](const UnlockBranch& b) { return !b.final_state || pair_npt(*b.final_state); });
  const auto outcomes = discriminate_keeping(rho, options.keep, tol);
  r.activation_by_discrimination = std::all_of(
      outcomes.begin(), outcomes.end(),
      [&](const auto& o) { return !o.post_state || pair_npt(*o.post_state); });
  phase("activation");

  r.activable = r.has_npt_cut && r.two_vs_rest_separable_certified && r.two_vs_rest_ppt &&
                r.activation_by_bell_measurements && r.activation_by_discrimination;
  return r;
}

}  // namespace bcabe
