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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "bcabe/analyze.hpp"
#include "bcabe/protocol.hpp"
#include "test_util.hpp"

using namespace bcabe;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (condition) return;
    if (passed) detail << "; failed: ";
    else detail << ", ";
    detail << what;
    passed = false;
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

constexpr int kSizes[] = {4, 6, 8};

// 1. The four unnormalized class projectors resolve the identity and are
// mutually orthogonal.
void completeness(Outcome& out) {
  double worst_sum = 0.0, worst_orth = 0.0, n8_seconds = 0.0;
  for (int n : kSizes) {
    const auto t0 = Clock::now();
    const double scale = std::ldexp(1.0, n - 2);
    std::array<ComplexMatrix, 4> p;
    ComplexMatrix sum(std::size_t{1} << n);
    for (StateClass c : StateClass::all()) {
      p[c.index()] = projector_direct(c, n).matrix() * Complex(scale);
      sum += p[c.index()];
    }
    worst_sum = std::max(worst_sum, frobenius_distance(sum, ComplexMatrix::identity(sum.dim())));
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        worst_orth = std::max(worst_orth, (p[a] * p[b]).frobenius_norm());
    if (n == 8) n8_seconds = seconds_since(t0);
  }
  out.detail << "sum error " << sci(worst_sum) << ", overlap " << sci(worst_orth)
             << ", n=8 in " << sci(n8_seconds) << " s";
  out.expect(worst_sum < 1e-12, "identity resolution");
  out.expect(worst_orth < 1e-12, "orthogonality");
  out.expect(n8_seconds < 10.0, "n=8 runtime");
}

// 2. The four-qubit rho+ is the Smolin state.
void smolin(Outcome& out) {
  const DensityMatrix rho = projector_direct(StateClass::rho_plus(), 4);
  ComplexMatrix form(16);
  for (BellLabel b : BellLabel::all()) form += tensor(bell_projector(b), bell_projector(b));
  form *= 0.25;
  double worst = 0.0;
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) worst = std::max(worst, std::abs(rho(i, j) - form(i, j)));
  const Complex diag = rho(0, 0), coherence = rho(0, 15);
  out.detail << "max entry error " << sci(worst) << ", <0000|rho|0000>=" << diag.real()
             << ", <0000|rho|1111>=" << coherence.real();
  out.expect(worst < 1e-14, "entrywise equality");
  out.expect(std::abs(diag - 0.125) < 1e-14 && std::abs(coherence - 0.125) < 1e-14,
             "spot entries");
}

// 3. Direct, recursive and Pauli-conjugated builds agree pairwise.
void triangle(Outcome& out) {
  double worst = 0.0;
  int comparisons = 0;
  for (int n : kSizes) {
    const auto recursive = recursive_family(n);
    const DensityMatrix base = projector_direct(StateClass::rho_plus(), n);
    for (StateClass c : StateClass::all()) {
      const DensityMatrix direct = projector_direct(c, n);
      const DensityMatrix pauli = pauli_relate(base, c);
      const auto& rec = recursive[c.index()];
      worst = std::max({worst, frobenius_distance(direct, rec), frobenius_distance(direct, pauli),
                        frobenius_distance(rec, pauli)});
      comparisons += 3;
    }
  }
  out.detail << comparisons << " comparisons, max distance " << sci(worst);
  out.expect(comparisons == 36, "comparison count");
  out.expect(worst < 1e-12, "agreement");
}

// 4. Every transposition fixes every class state.
void permutation(Outcome& out) {
  double worst = 0.0;
  int checked = 0;
  for (int n : {4, 6})
    for (StateClass c : StateClass::all()) {
      const auto r = check_permutation_invariance(projector_direct(c, n));
      worst = std::max(worst, r.max_deviation);
      checked += n * (n - 1) / 2;
      out.expect(r.invariant, c.name() + " n=" + std::to_string(n));
    }
  out.detail << checked << " transpositions, max deviation " << sci(worst);
  out.expect(worst < 1e-10, "deviation bound");
}

// 5. Every pair-vs-rest cut carries an explicit separable decomposition and
// is PPT.
void separability(Outcome& out) {
  int certified = 0, cuts = 0;
  double min_eig = 1.0, worst_rebuild = 0.0;
  auto check_pair = [&](const DensityMatrix& rho, const std::string& name, int a, int b) {
    const auto result = certify_two_vs_rest_separable(rho, {a, b});
    out.expect(static_cast<bool>(result), name + " (" + std::to_string(a) + "," +
                                              std::to_string(b) + ") " + result.failure);
    if (result) {
      ++certified;
      worst_rebuild = std::max(worst_rebuild, result.certificate->reconstruction_error);
    }
    const CutVerdict v = is_ppt(rho, Bipartition(rho.qubits(), {a, b}));
    min_eig = std::min(min_eig, v.min_eigenvalue);
    ++cuts;
    out.expect(v.ppt && v.min_eigenvalue >= -1e-10, name + " PPT");
  };
  for (int n : {4, 6})
    for (StateClass c : StateClass::all()) {
      const DensityMatrix rho = projector_direct(c, n);
      for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) check_pair(rho, c.name(), a, b);
    }
  test::Rng rng(8);
  std::uniform_int_distribution<int> pick(1, 8);
  for (StateClass c : StateClass::all()) {
    const DensityMatrix rho = projector_direct(c, 8);
    for (int k = 0; k < 3; ++k) {
      int a = pick(rng), b = pick(rng);
      while (b == a) b = pick(rng);
      check_pair(rho, c.name() + " n=8", std::min(a, b), std::max(a, b));
    }
  }
  out.detail << certified << " certificates (rebuild error " << sci(worst_rebuild) << "), "
             << cuts << " PPT cuts, min PT eigenvalue " << sci(min_eig);
}

// 6. Every single-qubit cut is NPT, with one shared negativity value.
void activability(Outcome& out) {
  double lo = 1e300, hi = 0.0;
  for (int n : kSizes)
    for (StateClass c : StateClass::all()) {
      const DensityMatrix rho = projector_direct(c, n);
      double state_lo = 1e300, state_hi = 0.0;
      for (int q = 1; q <= n; ++q) {
        const CutVerdict v = is_ppt(rho, Bipartition(n, {q}));
        out.expect(!v.ppt, c.name() + " qubit " + std::to_string(q) + " NPT");
        state_lo = std::min(state_lo, v.negativity);
        state_hi = std::max(state_hi, v.negativity);
      }
      out.expect(state_hi - state_lo < 1e-10, c.name() + " n=" + std::to_string(n) + " spread");
      lo = std::min(lo, state_lo);
      hi = std::max(hi, state_hi);
    }
  // Frozen oracle value for every class and size.
  constexpr double kGolden = 0.5;
  out.detail << "negativity in [" << lo << ", " << hi << "], oracle " << kGolden;
  out.expect(lo > 1e-3, "negativity floor");
  out.expect(std::abs(lo - kGolden) < 1e-10 && std::abs(hi - kGolden) < 1e-10, "oracle value");
}

// 7. Sequential Bell measurements always leave one ebit.
void unlock(Outcome& out) {
  double min_fid = 1.0, prob_dev = 0.0, keep_dev = 0.0;
  std::size_t branches = 0;
  for (int n : kSizes)
    for (StateClass c : StateClass::all()) {
      const DensityMatrix rho = projector_direct(c, n);
      const UnlockResult ref = unlock_sequential(rho, {1, 2});
      const double uniform = std::pow(0.25, (n - 2) / 2);
      branches += ref.branches.size();
      min_fid = std::min(min_fid, ref.min_fidelity());
      for (const auto& b : ref.branches) prob_dev = std::max(prob_dev, std::abs(b.probability - uniform));
      out.expect(xor_rule_holds(ref, c), c.name() + " xor rule");

      // A different kept pair and a scrambled pairing must give the same
      // branch-by-branch result.
      const QubitPair keep{2, 3};
      std::vector<QubitPair> pairing;
      std::vector<int> rest;
      for (int q = n; q >= 1; --q)
        if (q != keep.first && q != keep.second) rest.push_back(q);
      for (std::size_t k = 0; k + 1 < rest.size(); k += 2) pairing.emplace_back(rest[k], rest[k + 1]);
      const UnlockResult alt = unlock_sequential(rho, keep, pairing);
      out.expect(alt.branches.size() == ref.branches.size(), "branch count");
      for (std::size_t k = 0; k < std::min(alt.branches.size(), ref.branches.size()); ++k) {
        keep_dev = std::max(keep_dev, std::abs(alt.branches[k].probability - ref.branches[k].probability));
        keep_dev = std::max(keep_dev, frobenius_distance(*alt.branches[k].final_state,
                                                         *ref.branches[k].final_state));
      }
    }
  out.detail << branches << " branches, min fidelity " << 1.0 - min_fid << " below 1, probability deviation "
             << sci(prob_dev) << ", keep/pairing deviation " << sci(keep_dev);
  out.expect(min_fid >= 1.0 - 1e-10, "fidelity");
  out.expect(prob_dev < 1e-12, "uniform probabilities");
  out.expect(keep_dev < 1e-10, "kept pair / pairing independence");
}

// 8. The joint class measurement has four equiprobable outcomes, each
// leaving the kept pair in the correlated Bell state.
void discrimination(Outcome& out) {
  double prob_dev = 0.0, min_fid = 1.0;
  int outcomes = 0;
  for (int n : kSizes)
    for (StateClass c : StateClass::all()) {
      for (const auto& o : discriminate_keeping(projector_direct(c, n), {1, 2})) {
        ++outcomes;
        prob_dev = std::max(prob_dev, std::abs(o.probability - 0.25));
        if (!o.post_state) {
          out.expect(false, "missing post-state");
          continue;
        }
        const auto f = bell_fidelity(*o.post_state);
        min_fid = std::min(min_fid, f.fidelity);
        out.expect(f.label == (c.label() ^ o.label.label()),
                   c.name() + " outcome " + o.label.name() + " label");
      }
    }
  out.detail << outcomes << " outcomes, probability deviation " << sci(prob_dev)
             << ", min Bell fidelity " << min_fid;
  out.expect(outcomes == 48, "outcome count");
  out.expect(prob_dev <= 1e-12, "uniform outcomes");
  out.expect(min_fid >= 1.0 - 1e-10, "Bell correlation");
}

// 9. Noisy mixtures: the activated pair is entangled exactly when the
// largest weight exceeds 1/2.
void noisy_threshold(Outcome& out) {
  constexpr int kPoints = 101;
  const double step = 1.0 / (kPoints - 1);
  int flips_total = 0, points = 0;
  for (const std::string path : {"two-term", "werner"}) {
    std::vector<bool> verdict;
    for (int i = 0; i < kPoints; ++i) {
      const double w = static_cast<double>(i) / (kPoints - 1);
      const NoisyWeights weights = path == "werner" ? NoisyWeights::werner(w) : NoisyWeights::two_term(w);
      const BellDiagonalVerdict rule = bell_diagonal_entangled(weights);
      bool activated = false;
      for (const auto& o : discriminate_keeping(noisy_state(weights, 4), {1, 2}))
        if (o.post_state) activated = activated || !is_ppt(*o.post_state, Bipartition(2, {1})).ppt;
      verdict.push_back(activated);
      ++points;
      out.expect(activated == rule.entangled, path + " verdict at w=" + sci(w));
      for (auto family : {BellDiagonalFamily::Pi, BellDiagonalFamily::Gamma})
        for (int sign : {1, -1})
          out.expect(is_ppt(bell_diagonal(weights, family, sign), Bipartition(2, {1})).ppt ==
                         !rule.entangled,
                     path + " Bell-diagonal PPT at w=" + sci(w));
      if (path == "two-term" && i != (kPoints - 1) / 2)
        out.expect(rule.entangled, "unequal two-term weights entangled at w=" + sci(w));
    }
    int flips = 0;
    for (int i = 0; i + 1 < kPoints; ++i) {
      if (verdict[i] == verdict[i + 1]) continue;
      ++flips;
      const double lo = double(i) * step, hi = double(i + 1) * step;
      out.expect(lo <= 0.5 && hi >= 0.5, path + " flip at [" + sci(lo) + "," + sci(hi) + "]");
    }
    out.expect(flips > 0, path + " has a transition");
    flips_total += flips;
  }
  out.expect(bell_diagonal_entangled(NoisyWeights(0.7, 0.0, 0.3, 0.0)).entangled,
             "(0.7,0,0.3,0) entangled");
  out.detail << points << " grid points, " << flips_total
             << " verdict flips, all within one grid step of 1/2";
}

// 10. Randomized properties.
void properties(Outcome& out, Clock::time_point start) {
  test::Rng rng(20261016);
  constexpr int kCases = 100;
  double involution = 0.0, trace_dev = 0.0, reconstruction = 0.0, prob_dev = 0.0;
  for (int k = 0; k < kCases; ++k) {
    const int n = 2 + k % 4;
    const DensityMatrix rho = test::random_density(rng, n);
    const Bipartition cut = test::random_bipartition(rng, n);
    const ComplexMatrix pt = partial_transpose(rho, cut);
    involution = std::max(involution, frobenius_distance(
                                          partial_transpose(pt, n, cut.right()), rho.matrix()));
    trace_dev = std::max(trace_dev, std::abs(pt.trace() - rho.matrix().trace()));
    const auto kept = cut.left();
    trace_dev = std::max(trace_dev, std::abs(partial_trace(rho.matrix(), n, kept).trace() - 1.0));

    const ComplexMatrix h = test::random_hermitian(rng, std::size_t{1} << (1 + k % 6));
    const EigenSystem es = hermitian_eigensystem(h);
    ComplexMatrix rebuilt(h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i)
      for (std::size_t j = 0; j < h.dim(); ++j) {
        Complex s{};
        for (std::size_t m = 0; m < h.dim(); ++m)
          s += es.vectors(i, m) * es.values[m] * std::conj(es.vectors(j, m));
        rebuilt(i, j) = s;
      }
    reconstruction = std::max(reconstruction, frobenius_distance(rebuilt, h));

    const DensityMatrix state = test::random_density(rng, 4);
    std::uniform_int_distribution<int> pick(1, 4);
    int a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    double total = 0.0;
    for (const auto& o : bell_measure(state, {a, b})) total += o.probability;
    prob_dev = std::max(prob_dev, std::abs(total - 1.0));
    prob_dev = std::max(prob_dev, std::abs(unlock_sequential(state, {a, b}).total_probability() - 1.0));
  }
  const double elapsed = seconds_since(start);
  out.detail << kCases << " cases each: involution " << sci(involution) << ", trace " << sci(trace_dev)
             << ", eigen reconstruction " << sci(reconstruction) << ", probability " << sci(prob_dev)
             << "; suite time " << sci(elapsed) << " s";
  out.expect(involution < 1e-12, "involution");
  out.expect(trace_dev < 1e-12, "trace preservation");
  out.expect(reconstruction < 1e-9, "eigen reconstruction");
  out.expect(prob_dev < 1e-12, "probability normalization");
  out.expect(elapsed < 120.0, "suite runtime");
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"decomposition completeness", completeness},
      {"Smolin equality", smolin},
      {"construction triangle", triangle},
      {"permutation invariance", permutation},
      {"pair-vs-rest separability", separability},
      {"single-qubit cut activability witness", activability},
      {"sequential Bell unlock", unlock},
      {"class discrimination", discrimination},
      {"noisy threshold", noisy_threshold},
      {"property suite", [start](Outcome& o) { properties(o, start); }},
  };
  int failures = 0, index = 0;
  for (const auto& [name, body] : criteria) {
    ++index;
    Outcome out;
    const auto t0 = Clock::now();
    try {
      body(out);
    } catch (const std::exception& e) {
      out.expect(false, std::string("exception: ") + e.what());
    }
    failures += !out.passed;
    std::printf("%s %2d %s: %s (%.2f s)\n", out.passed ? "PASS" : "FAIL", index, name,
                out.detail.str().c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
