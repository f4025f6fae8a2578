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

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bcabe/cli.hpp"

namespace {

using bcabe::cli::ConfigError;
using bcabe::cli::RunConfig;

struct RawFlags {
  std::string cls, noisy, keep, pairing, json_path, dump_path, format = "json";
  bool exhaustive = false, sampled = false;
};

void add_common(CLI::App* sub, RunConfig& cfg, RawFlags& raw) {
  sub->add_option("--class", raw.cls, "rho+, rho-, sigma+ or sigma-");
  sub->add_option("--noisy", raw.noisy, "mixture weights x+,x-,y+,y-");
  sub->add_option("--n", cfg.qubits, "even qubit count");
  sub->add_option("--keep", raw.keep, "kept pair i,j");
  sub->add_option("--pairing", raw.pairing, "measured pairs i,j;k,l;...");
  sub->add_option("--tol-ppt", cfg.tol.ppt, "relative PPT eigenvalue tolerance");
  sub->add_option("--json", raw.json_path, "write the JSON report here instead of stdout");
  sub->add_option("--format", raw.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_flag("--exhaustive", raw.exhaustive, "scan every bipartition (n <= 8)");
  sub->add_flag("--sampled", raw.sampled, "scan a seeded sample of bipartitions");
  sub->add_option("--seed", cfg.seed, "seed for sampled mode");
  sub->add_flag("--timings", cfg.timings, "include wall-clock per phase (not byte-stable)");
}

void finish(RunConfig& cfg, const RawFlags& raw) {
  if (!raw.cls.empty()) cfg.cls = bcabe::StateClass::parse(raw.cls);
  if (!raw.noisy.empty()) cfg.noisy = bcabe::cli::parse_weights(raw.noisy);
  if (!raw.keep.empty()) cfg.keep = bcabe::cli::parse_pair(raw.keep);
  if (!raw.pairing.empty()) cfg.pairing = bcabe::cli::parse_pairing(raw.pairing);
  if (raw.exhaustive && raw.sampled) throw ConfigError("--exhaustive and --sampled conflict");
  if (raw.sampled) cfg.mode = bcabe::ScanOptions::Mode::Sampled;
}

bool write_to(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream os(path, std::ios::binary);
  os << text;
  return static_cast<bool>(os);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-correlated activable bound entangled states: construction and checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  RawFlags raw;

  auto* construct = app.add_subcommand("construct", "build a state and dump its matrix");
  add_common(construct, cfg, raw);
  construct->add_option("--dump", raw.dump_path, "matrix dump path (default stdout)");
  auto* verify = app.add_subcommand("verify", "run the full structural checklist at --n");
  add_common(verify, cfg, raw);
  auto* unlock = app.add_subcommand("unlock", "sequential Bell measurements, all branches");
  add_common(unlock, cfg, raw);
  auto* discriminate = app.add_subcommand("discriminate", "joint subspace measurement");
  add_common(discriminate, cfg, raw);
  auto* scan = app.add_subcommand("noisy-scan", "sweep noisy weights across the w = 1/2 threshold");
  add_common(scan, cfg, raw);
  scan->add_option("--path", cfg.scan_path, "two-term (w,1-w,0,0) or werner")
      ->check(CLI::IsMember({"two-term", "werner"}));
  scan->add_option("--points", cfg.points, "grid points on [0,1]");
  auto* report = app.add_subcommand("report", "activable-bound-entanglement report for one state");
  add_common(report, cfg, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bcabe::cli::kExitUsage;
  }

  bcabe::cli::CommandResult result;
  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.max_qubits = bcabe::max_qubits_from_env();
    finish(cfg, raw);
    result = bcabe::cli::run(cfg);
  } catch (const bcabe::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bcabe::cli::kExitUsage;
  }

  if (result.exit_code == bcabe::cli::kExitUsage) {
    std::cerr << "error: " << result.report.value("error", std::string("invalid configuration"))
              << "\n";
    return result.exit_code;
  }

  const std::string text = raw.format == "text" ? bcabe::cli::render_text(result.report)
                                                : bcabe::to_json_text(result.report);
  if (cfg.command == "construct") {
    // stdout carries the matrix dump unless --dump redirects it; the
    // summary then goes to --json or stderr.
    if (!write_to(raw.dump_path, result.matrix_dump)) return bcabe::cli::kExitUsage;
    if (!raw.json_path.empty()) {
      if (!write_to(raw.json_path, text)) return bcabe::cli::kExitUsage;
    } else if (raw.dump_path.empty() || raw.dump_path == "-") {
      std::cerr << text;
    } else {
      std::cout << text;
    }
  } else if (!write_to(raw.json_path, text)) {
    std::cerr << "error: cannot write " << raw.json_path << "\n";
    return bcabe::cli::kExitUsage;
  }
  return result.exit_code;
}
