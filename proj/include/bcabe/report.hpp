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

// JSON rendering of reports. Output is byte-stable: keys keep insertion
// order and floats are written with 17 significant digits.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bcabe/analyze.hpp"
#include "bcabe/format.hpp"
#include "bcabe/protocol.hpp"

namespace bcabe {

using Json = nlohmann::ordered_json;

namespace detail {

inline void write_json(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write_json(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += '[';
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ',';
        newline(depth + 1);
        write_json(out, j[k], indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Deterministic serialization; indent < 0 gives a single line.
inline std::string to_json_text(const Json& j, int indent = 2) {
  std::string out;
  detail::write_json(out, j, indent, 0);
  out += '\n';
  return out;
}

inline Json to_json(const Tolerances& t) {
  return Json{{"hermiticity", t.hermiticity},     {"ppt", t.ppt},
              {"equality", t.equality},           {"trace", t.trace},
              {"certificate", t.certificate},     {"fidelity", t.fidelity},
              {"permutation", t.permutation},     {"probability_floor", t.probability_floor},
              {"eigen_convergence", t.eigen_convergence}};
}

inline Json to_json(const CutVerdict& v) {
  return Json{{"cut", v.cut.left()},
              {"min_eig", v.min_eigenvalue},
              {"negativity", v.negativity},
              {"ppt", v.ppt}};
}

inline Json to_json(const AbeReport& r, bool include_timings = false) {
  Json cuts = Json::array();
  for (const auto& v : r.cuts) cuts.push_back(to_json(v));
  Json j{{"state", r.descriptor},
         {"qubits", r.qubits},
         {"cuts", cuts},
         {"has_npt_cut", r.has_npt_cut},
         {"permutation_invariant", r.permutation_invariant},
         {"permutation_deviation", r.permutation_deviation},
         {"two_vs_rest_separable_certified", r.two_vs_rest_separable_certified},
         {"two_vs_rest_ppt", r.two_vs_rest_ppt},
         {"certificate_failures", r.certificate_failures},
         {"activation_by_bell_measurements", r.activation_by_bell_measurements},
         {"activation_by_discrimination", r.activation_by_discrimination},
         {"unlocked_min_fidelity", r.unlocked_min_fidelity},
         {"activable", r.activable},
         {"tolerances", to_json(r.tolerances)}};
  if (include_timings) {
    Json t = Json::object();
    for (const auto& [name, seconds] : r.phase_seconds) t[name] = seconds;
    j["wall_clock_seconds"] = t;
  }
  return j;
}

inline Json pair_json(QubitPair p) { return Json::array({p.first, p.second}); }

inline Json to_json(const UnlockResult& u, std::optional<StateClass> cls,
                    const Tolerances& tol = kDefaultTolerances) {
  Json pairing = Json::array();
  for (const auto& p : u.pairing) pairing.push_back(pair_json(p));
  Json branches = Json::array();
  for (const auto& b : u.branches) {
    Json labels = Json::array();
    for (const auto& l : b.labels) labels.push_back(l.name());
    Json entry{{"labels", labels}, {"probability", b.probability}};
    if (b.final_state) {
      entry["fidelity"] = b.fidelity;
      entry["best_label"] = b.best_label.name();
    } else {
      entry["fidelity"] = nullptr;
      entry["best_label"] = nullptr;
    }
    branches.push_back(entry);
  }
  Json aggregate{{"branch_count", u.branches.size()},
                 {"total_probability", u.total_probability()},
                 {"min_fidelity", u.min_fidelity()},
                 {"max_fidelity", u.max_fidelity()}};
  if (cls) aggregate["xor_rule_satisfied"] = xor_rule_holds(u, *cls, tol);
  else aggregate["xor_rule_satisfied"] = nullptr;
  return Json{{"kept", pair_json(u.kept)},
              {"pairing", pairing},
              {"branches", branches},
              {"aggregate", aggregate}};
}

template <typename Label>
Json to_json(const MeasurementOutcome<Label>& o) {
  Json j{{"label", o.label.name()}, {"probability", o.probability}};
  if (o.post_state && o.post_state->qubits() == 2) {
    const auto f = bell_fidelity(*o.post_state);
    j["kept_pair_best_label"] = f.label.name();
    j["kept_pair_fidelity"] = f.fidelity;
  } else if (!o.post_state) {
    j["post_state"] = nullptr;
  }
  return j;
}

}  // namespace bcabe
