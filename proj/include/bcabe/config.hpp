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

#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace bcabe {

/// Raised when a caller violates a documented precondition (bad qubit
/// index, odd qubit count, malformed weights, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

/// Every numerical threshold used by the library. Acceptance checks read
/// from here so there is one place to look.
struct Tolerances {
  double hermiticity = 1e-12;   // elementwise |a_ij - conj(a_ji)|
  double ppt = 1e-10;           // relative to the 1-norm of the partial transpose
  double equality = 1e-12;      // Frobenius distance between constructions
  double trace = 1e-10;         // |tr(rho) - 1| accepted for a density matrix
  double certificate = 1e-10;   // separable-form reconstruction distance
  double fidelity = 1e-10;      // Bell fidelity deficit accepted as "pure"
  double permutation = 1e-10;   // max deviation for permutation invariance
  double probability_floor = 1e-14;  // below this a branch is recorded as null
  double eigen_convergence = 1e-12;  // Jacobi off-diagonal stopping ratio
};

inline constexpr Tolerances kDefaultTolerances{};

/// Largest qubit count accepted without opting in. n = 10 is reachable by
/// raising the limit (the CLI reads BCABE_MAX_N).
inline constexpr int kDefaultMaxQubits = 8;
inline constexpr int kHardMaxQubits = 10;

inline int max_qubits_from_env() {
  const char* raw = std::getenv("BCABE_MAX_N");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxQubits;
  char* end = nullptr;
  long value = std::strtol(raw, &end, 10);
  require(end != raw && *end == '\0', "BCABE_MAX_N is not an integer");
  require(value >= 2 && value <= kHardMaxQubits,
          "BCABE_MAX_N must lie in [2, " + std::to_string(kHardMaxQubits) + "]");
  return static_cast<int>(value);
}

}  // namespace bcabe
