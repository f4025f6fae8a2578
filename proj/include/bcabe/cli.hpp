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

// Command implementations behind the `bcabe` executable. Each command takes
// a validated RunConfig and returns a JSON report plus an exit code:
//   0  every check passed
//   1  a verification check failed
//   2  usage or configuration error

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bcabe/analyze.hpp"
#include "bcabe/construct.hpp"
#include "bcabe/protocol.hpp"
#include "bcabe/report.hpp"

namespace bcabe::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

class ConfigError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

struct RunConfig {
  std::string command;
  std::optional<StateClass> cls;
  std::optional<NoisyWeights> noisy;
  int qubits = 4;
  std::optional<QubitPair> keep;
  std::optional<std::vector<QubitPair>> pairing;
  Tolerances tol = kDefaultTolerances;
  ScanOptions::Mode mode = ScanOptions::Mode::Exhaustive;
  std::uint64_t seed = 0;
  int max_qubits = kDefaultMaxQubits;
  bool timings = false;
  std::string scan_path = "two-term";
  int points = 101;
};

struct CommandResult {
  int exit_code = kExitPass;
  Json report;
  std::string matrix_dump;  // construct only
};

// ---------------------------------------------------------------------------
// Argument parsing helpers

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

inline double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

inline int parse_int(const std::string& s) {
  const double v = parse_number(s);
  if (v != std::floor(v)) throw ConfigError("not an integer: '" + s + "'");
  return static_cast<int>(v);
}

/// "x+,x-,y+,y-"
inline NoisyWeights parse_weights(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw ConfigError("--noisy expects four comma-separated weights");
  try {
    return NoisyWeights(parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2]),
                        parse_number(parts[3]));
  } catch (const ConfigError&) {
    throw;
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

/// "i,j"
inline QubitPair parse_pair(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw ConfigError("expected a qubit pair 'i,j', got '" + text + "'");
  return {parse_int(parts[0]), parse_int(parts[1])};
}

/// "i,j;k,l;..."
inline std::vector<QubitPair> parse_pairing(const std::string& text) {
  std::vector<QubitPair> out;
  for (const auto& p : split(text, ';')) out.push_back(parse_pair(p));
  return out;
}

inline void validate(const RunConfig& cfg) {
  if (cfg.qubits % 2 != 0 || cfg.qubits < 4 || cfg.qubits > cfg.max_qubits)
    throw ConfigError("--n must be even and lie in [4, " + std::to_string(cfg.max_qubits) +
                      "] (raise the ceiling with BCABE_MAX_N)");
  if (cfg.cls && cfg.noisy) throw ConfigError("--class and --noisy are mutually exclusive");
  if (!(cfg.tol.ppt > 0.0)) throw ConfigError("--tol-ppt must be positive");
  if (cfg.keep) {
    const auto [a, b] = *cfg.keep;
    if (a < 1 || b < 1 || a > cfg.qubits || b > cfg.qubits || a == b)
      throw ConfigError("--keep must name two distinct qubits in [1, n]");
  }
}

inline StateDescriptor descriptor_of(const RunConfig& cfg) {
  if (cfg.noisy) return {*cfg.noisy, cfg.qubits};
  if (cfg.cls) return {*cfg.cls, cfg.qubits};
  throw ConfigError("this command needs --class or --noisy");
}

inline Json check(const std::string& name, bool passed, double value, double threshold) {
  return Json{{"name", name}, {"passed", passed}, {"value", value}, {"threshold", threshold}};
}

// ---------------------------------------------------------------------------
// construct

inline CommandResult cmd_construct(const RunConfig& cfg) {
  const StateDescriptor desc = descriptor_of(cfg);
  const DensityMatrix rho = desc.build(cfg.max_qubits);
  std::ostringstream dump;
  write_matrix_dump(dump, rho.matrix());
  Json summary{{"command", "construct"},
               {"state", desc.to_string()},
               {"qubits", rho.qubits()},
               {"dim", rho.dim()},
               {"trace", rho.matrix().trace().real()},
               {"rank", numerical_rank(rho.matrix())},
               {"min_eigenvalue", min_eigenvalue(rho)},
               {"tolerances", to_json(cfg.tol)}};
  if (cfg.cls) summary["class"] = cfg.cls->name();
  return {kExitPass, summary, dump.str()};
}

// ---------------------------------------------------------------------------
// verify

/// Runs the complete structural checklist for all four class states at
/// cfg.qubits (or only cfg.cls when given for the per-state parts).
inline CommandResult cmd_verify(const RunConfig& cfg) {
  const int n = cfg.qubits;
  const Tolerances& tol = cfg.tol;
  Json checks = Json::array();
  bool all_pass = true;
  auto add = [&](const std::string& name, bool passed, double value, double threshold) {
    checks.push_back(check(name, passed, value, threshold));
    all_pass = all_pass && passed;
  };

  std::array<std::optional<DensityMatrix>, 4> direct;
  for (StateClass c : StateClass::all()) direct[c.index()] = projector_direct(c, n, cfg.max_qubits);
  const double scale = std::ldexp(1.0, n - 2);  // undoes the 1/2^(n-2) normalization

  {
    ComplexMatrix sum(std::size_t{1} << n);
    for (const auto& d : direct) sum += d->matrix() * Complex(scale);
    const double err = frobenius_distance(sum, ComplexMatrix::identity(sum.dim()));
    add("completeness", err < tol.equality, err, tol.equality);
  }
  {
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        worst = std::max(worst, (direct[a]->matrix() * direct[b]->matrix()).frobenius_norm() *
                                    scale * scale);
    add("orthogonality", worst < tol.equality, worst, tol.equality);
  }
  {
    const auto recursive = recursive_family(n, cfg.max_qubits);
    double worst = 0.0;
    for (StateClass c : StateClass::all()) {
      const DensityMatrix& d = *direct[c.index()];
      const DensityMatrix p = pauli_relate(*direct[0], c);
      worst = std::max({worst, frobenius_distance(d, recursive[c.index()]),
                        frobenius_distance(d, p), frobenius_distance(p, recursive[c.index()])});
    }
    add("construction_triangle", worst < tol.equality, worst, tol.equality);
  }
  if (n == 4) {
    ComplexMatrix smolin(16);
    for (BellLabel b : BellLabel::all())
      smolin += tensor(bell_projector(b), bell_projector(b));
    smolin *= 0.25;
    const double err = frobenius_distance(smolin, direct[0]->matrix());
    add("smolin_form", err < 1e-14, err, 1e-14);
  }

  std::vector<StateClass> classes;
  if (cfg.cls) classes.push_back(*cfg.cls);
  else {
    const auto every = StateClass::all();
    classes.assign(every.begin(), every.end());
  }

  double perm_dev = 0.0, two_min = 1.0, one_neg_min = 1e300, one_neg_max = 0.0;
  double unlock_min = 1.0, prob_dev = 0.0, disc_min_fid = 1.0;
  bool certified = true, xor_ok = true, disc_labels_ok = true, activable = true;
  Json reports = Json::array();
  ClassifyOptions copts;
  copts.scan.mode = cfg.mode;
  copts.scan.seed = cfg.seed;
  if (cfg.keep) copts.keep = *cfg.keep;

  for (StateClass c : classes) {
    const DensityMatrix& rho = *direct[c.index()];
    const AbeReport report = classify_abe(rho, StateDescriptor{c, n}.to_string(), copts, tol);
    perm_dev = std::max(perm_dev, report.permutation_deviation);
    certified = certified && report.two_vs_rest_separable_certified;
    activable = activable && report.activable;
    for (const auto& v : report.cuts) {
      if (v.cut.left().size() == 2) two_min = std::min(two_min, v.min_eigenvalue);
      if (v.cut.left().size() == 1) {
        one_neg_min = std::min(one_neg_min, v.negativity);
        one_neg_max = std::max(one_neg_max, v.negativity);
      }
    }
    const auto unlock = unlock_sequential(rho, copts.keep, cfg.pairing, tol);
    unlock_min = std::min(unlock_min, unlock.min_fidelity());
    xor_ok = xor_ok && xor_rule_holds(unlock, c, tol);
    for (const auto& o : discriminate_keeping(rho, copts.keep, tol)) {
      prob_dev = std::max(prob_dev, std::abs(o.probability - 0.25));
      if (!o.post_state) { disc_labels_ok = false; continue; }
      const auto f = bell_fidelity(*o.post_state);
      disc_min_fid = std::min(disc_min_fid, f.fidelity);
      disc_labels_ok = disc_labels_ok && f.label == (c.label() ^ o.label.label());
    }
    reports.push_back(to_json(report, cfg.timings));
  }
  add("permutation_invariance", perm_dev < tol.permutation, perm_dev, tol.permutation);
  add("two_vs_rest_certificates", certified, certified ? 1.0 : 0.0, 1.0);
  const double ppt_floor = -tol.ppt;
  add("two_vs_rest_ppt", two_min >= ppt_floor, two_min, ppt_floor);
  add("one_vs_rest_npt", one_neg_min > 1e-3, one_neg_min, 1e-3);
  add("one_vs_rest_negativity_spread", one_neg_max - one_neg_min < tol.permutation,
      one_neg_max - one_neg_min, tol.permutation);
  add("unlock_one_ebit", unlock_min >= 1.0 - tol.fidelity && xor_ok, unlock_min,
      1.0 - tol.fidelity);
  add("discrimination", prob_dev <= 1e-12 && disc_labels_ok && disc_min_fid >= 1.0 - tol.fidelity,
      prob_dev, 1e-12);
  add("activable", activable, activable ? 1.0 : 0.0, 1.0);

  Json out{{"command", "verify"},
           {"qubits", n},
           {"mode", cfg.mode == ScanOptions::Mode::Exhaustive ? "exhaustive" : "sampled"},
           {"passed", all_pass},
           {"checks", checks},
           {"reports", reports},
           {"tolerances", to_json(tol)}};
  return {all_pass ? kExitPass : kExitFail, out, {}};
}

// ---------------------------------------------------------------------------
// unlock / discriminate / report

inline CommandResult cmd_unlock(const RunConfig& cfg) {
  const StateDescriptor desc = descriptor_of(cfg);
  const DensityMatrix rho = desc.build(cfg.max_qubits);
  const QubitPair keep = cfg.keep.value_or(QubitPair{1, 2});
  UnlockResult result;
  try {
    result = unlock_sequential(rho, keep, cfg.pairing, cfg.tol);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  const std::optional<StateClass> cls = cfg.cls;
  Json out{{"command", "unlock"}, {"state", desc.to_string()}};
  const Json body = to_json(result, cls, cfg.tol);
  for (const auto& [k, v] : body.items()) out[k] = v;
  out["checks"] = Json::array({"one_ebit", "xor_rule", "probability_normalization"});
  out["tolerances"] = to_json(cfg.tol);
  bool ok = std::abs(result.total_probability() - 1.0) <= 1e-12;
  if (cls) ok = ok && result.min_fidelity() >= 1.0 - cfg.tol.fidelity && xor_rule_holds(result, *cls, cfg.tol);
  out["passed"] = ok;
  return {ok ? kExitPass : kExitFail, out, {}};
}

inline CommandResult cmd_discriminate(const RunConfig& cfg) {
  const StateDescriptor desc = descriptor_of(cfg);
  const DensityMatrix rho = desc.build(cfg.max_qubits);
  const QubitPair keep = cfg.keep.value_or(QubitPair{1, 2});
  const auto outcomes = discriminate_keeping(rho, keep, cfg.tol);
  Json list = Json::array();
  bool ok = true;
  double total = 0.0;
  for (const auto& o : outcomes) {
    Json j = to_json(o);
    total += o.probability;
    if (cfg.cls) {
      const BellLabel expected = cfg.cls->label() ^ o.label.label();
      j["expected_label"] = expected.name();
      ok = ok && std::abs(o.probability - 0.25) <= 1e-12 && o.post_state &&
           bell_fidelity(*o.post_state).label == expected &&
           bell_fidelity(*o.post_state).fidelity >= 1.0 - cfg.tol.fidelity;
    }
    list.push_back(j);
  }
  ok = ok && std::abs(total - 1.0) <= 1e-12;
  Json group = Json::array();
  for (int q = 1; q <= cfg.qubits; ++q)
    if (q != keep.first && q != keep.second) group.push_back(q);
  Json out{{"command", "discriminate"},
           {"state", desc.to_string()},
           {"kept", pair_json(keep)},
           {"group", group},
           {"outcomes", list},
           {"total_probability", total},
           {"checks", Json::array({"uniform_outcomes", "bell_correlation"})},
           {"passed", ok},
           {"tolerances", to_json(cfg.tol)}};
  return {ok ? kExitPass : kExitFail, out, {}};
}

inline CommandResult cmd_report(const RunConfig& cfg) {
  const StateDescriptor desc = descriptor_of(cfg);
  const DensityMatrix rho = desc.build(cfg.max_qubits);
  ClassifyOptions copts;
  copts.scan.mode = cfg.mode;
  copts.scan.seed = cfg.seed;
  if (cfg.keep) copts.keep = *cfg.keep;
  const AbeReport report = classify_abe(rho, desc.to_string(), copts, cfg.tol);
  Json out{{"command", "report"}};
  const Json body = to_json(report, cfg.timings);
  for (const auto& [k, v] : body.items()) out[k] = v;
  return {kExitPass, out, {}};
}

// ---------------------------------------------------------------------------
// noisy-scan

struct ScanPoint {
  double parameter = 0.0;
  double w_max = 0.0;
  bool activated_entangled = false;  // kept pair NPT after discrimination
  double negativity = 0.0;
  double unlocked_fidelity = 0.0;    // best branch fidelity after Bell measurements
  bool rule = false;                 // w_max > 1/2
  bool pi_ppt_agrees = true;
};

inline NoisyWeights scan_weights(const std::string& path, double w) {
  if (path == "two-term") return NoisyWeights::two_term(w);
  if (path == "werner") return NoisyWeights::werner(w);
  throw ConfigError("unknown scan path '" + path + "' (expected two-term or werner)");
}

inline ScanPoint evaluate_scan_point(const NoisyWeights& w, double parameter, int n,
                                     const Tolerances& tol) {
  ScanPoint pt;
  pt.parameter = parameter;
  const BellDiagonalVerdict bd = bell_diagonal_entangled(w, tol);
  pt.w_max = bd.w_max;
  pt.rule = bd.entangled;
  pt.pi_ppt_agrees = bd.ppt_agrees;
  const DensityMatrix rho = noisy_state(w, n, n);
  for (const auto& o : discriminate_keeping(rho, {1, 2}, tol)) {
    if (!o.post_state) continue;
    const CutVerdict v = is_ppt(*o.post_state, Bipartition(2, {1}), tol);
    pt.activated_entangled = pt.activated_entangled || !v.ppt;
    pt.negativity = std::max(pt.negativity, v.negativity);
  }
  pt.unlocked_fidelity = unlock_sequential(rho, {1, 2}, std::nullopt, tol).max_fidelity();
  return pt;
}

inline CommandResult cmd_noisy_scan(const RunConfig& cfg) {
  if (cfg.points < 3) throw ConfigError("--points must be at least 3");
  scan_weights(cfg.scan_path, 0.5);  // validates the path name
  const double step = 1.0 / (cfg.points - 1);
  std::vector<ScanPoint> points;
  for (int i = 0; i < cfg.points; ++i) {
    const double w = static_cast<double>(i) / (cfg.points - 1);
    points.push_back(evaluate_scan_point(scan_weights(cfg.scan_path, w), w, cfg.qubits, cfg.tol));
  }

  bool agree = true;
  for (const auto& p : points) agree = agree && p.activated_entangled == p.rule && p.pi_ppt_agrees;
  // Every verdict flip must sit in a grid interval touching or containing 1/2.
  Json flips = Json::array();
  bool flips_bracket_half = true;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i].activated_entangled == points[i + 1].activated_entangled) continue;
    const double lo = points[i].parameter, hi = points[i + 1].parameter;
    flips.push_back(Json::array({lo, hi}));
    flips_bracket_half = flips_bracket_half && lo <= 0.5 && hi >= 0.5;
  }
  const bool ok = agree && !flips.empty() && flips_bracket_half;

  Json table = Json::array();
  for (const auto& p : points)
    table.push_back(Json{{"w", p.parameter},
                         {"w_max", p.w_max},
                         {"ppt", !p.activated_entangled},
                         {"negativity", p.negativity},
                         {"unlocked_fidelity", p.unlocked_fidelity},
                         {"rule_w_max_above_half", p.rule}});
  Json out{{"command", "noisy-scan"},
           {"path", cfg.scan_path},
           {"qubits", cfg.qubits},
           {"points", cfg.points},
           {"grid_step", step},
           {"table", table},
           {"transitions", flips},
           {"verdict_matches_rule", agree},
           {"transitions_bracket_half", flips_bracket_half && !flips.empty()},
           {"checks", Json::array({"w_above_half_rule", "pi_ppt_agreement", "threshold_location"})},
           {"passed", ok},
           {"tolerances", to_json(cfg.tol)}};
  return {ok ? kExitPass : kExitFail, out, {}};
}

/// Dispatches on cfg.command. Precondition errors map to exit code 2.
inline CommandResult run(const RunConfig& cfg) {
  try {
    validate(cfg);
    if (cfg.command == "construct") return cmd_construct(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "unlock") return cmd_unlock(cfg);
    if (cfg.command == "discriminate") return cmd_discriminate(cfg);
    if (cfg.command == "noisy-scan") return cmd_noisy_scan(cfg);
    if (cfg.command == "report") return cmd_report(cfg);
    throw ConfigError("unknown command '" + cfg.command + "'");
  } catch (const PreconditionError& e) {
    return {kExitUsage, Json{{"command", cfg.command}, {"error", e.what()}}, {}};
  }
}

/// Plain-text rendering of a report: one "path = value" line per leaf.
inline std::string render_text(const Json& j, const std::string& prefix = "") {
  std::string out;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      out += render_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t k = 0; k < j.size(); ++k)
      out += render_text(j[k], prefix + "[" + std::to_string(k) + "]");
  } else {
    std::string value = to_json_text(j, -1);
    value.pop_back();
    out += prefix + " = " + value + "\n";
  }
  return out;
}

}  // namespace bcabe::cli
