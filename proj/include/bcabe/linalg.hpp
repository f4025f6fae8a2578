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

// Dense complex linear algebra on qubit registers.
//
// Qubits are numbered 1..n and qubit 1 is the most significant bit of a
// basis index: index(a_1 ... a_n) = sum_j a_j 2^(n-j).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bcabe/config.hpp"
#include "bcabe/format.hpp"

namespace bcabe {

using Complex = std::complex<double>;

/// Square, row-major, dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }
  std::span<const Complex> data() const { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other) {
    require(dim_ == other.dim_, "matrix dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& other) {
    require(dim_ == other.dim_, "matrix dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex scale) {
    for (auto& v : data_) v *= scale;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.dim_ == b.dim_, "matrix dimension mismatch");
    const std::size_t d = a.dim_;
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        const Complex* brow = &b.data_[k * d];
        Complex* orow = &out.data_[i * d];
        for (std::size_t j = 0; j < d; ++j) orow[j] += aik * brow[j];
      }
    }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  ComplexMatrix adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  Complex trace() const {
    Complex t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  // max column sum of moduli
  double one_norm() const {
    double best = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) s += std::abs((*this)(i, j));
      best = std::max(best, s);
    }
    return best;
  }

  bool is_hermitian(double tol) const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.dim() == b.dim(), "frobenius_distance: dimension mismatch");
  double s = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) s += std::norm(da[k] - db[k]);
  return std::sqrt(s);
}

/// Kronecker product, `a` is the most significant factor.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

namespace detail {

inline bool is_power_of_two_dim(std::size_t dim, int qubits) {
  return qubits >= 0 && qubits < 63 && dim == (std::size_t{1} << qubits);
}

// Bit shift of 1-based qubit q in an n-qubit index.
inline int shift_of(int qubits, int q) { return qubits - q; }

inline std::uint64_t mask_of(int qubits, std::span<const int> subset) {
  std::uint64_t mask = 0;
  for (int q : subset) {
    require(q >= 1 && q <= qubits, "qubit index " + std::to_string(q) + " out of range");
    const std::uint64_t bit = std::uint64_t{1} << shift_of(qubits, q);
    require((mask & bit) == 0, "qubit index " + std::to_string(q) + " repeated");
    mask |= bit;
  }
  return mask;
}

// Scatters the low bits of `value` into the set positions of `mask`
// (least significant first).
inline std::uint64_t deposit(std::uint64_t value, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t bit = 1; mask != 0; bit <<= 1) {
    const std::uint64_t lowest = mask & (~mask + 1);
    if (value & bit) out |= lowest;
    mask &= mask - 1;
  }
  return out;
}

inline std::vector<int> complement(int qubits, std::span<const int> subset) {
  std::vector<int> out;
  for (int q = 1; q <= qubits; ++q)
    if (std::find(subset.begin(), subset.end(), q) == subset.end()) out.push_back(q);
  return out;
}

}  // namespace detail

/// Hermitian, unit-trace matrix on a fixed number of qubits. Positivity is
/// not checked on construction (it needs an eigensolve); see
/// `min_eigenvalue`.
class DensityMatrix {
 public:
  DensityMatrix(int qubits, ComplexMatrix matrix, const Tolerances& tol = kDefaultTolerances)
      : qubits_(qubits), matrix_(std::move(matrix)) {
    require(qubits >= 1 && detail::is_power_of_two_dim(matrix_.dim(), qubits),
            "density matrix dimension must be 2^qubits");
    require(matrix_.is_hermitian(tol.hermiticity), "density matrix is not Hermitian");
    require(std::abs(matrix_.trace() - 1.0) <= tol.trace, "density matrix trace is not 1");
  }

  /// Divides by the trace, which must be positive.
  static DensityMatrix normalized(int qubits, ComplexMatrix matrix,
                                  const Tolerances& tol = kDefaultTolerances) {
    const double t = matrix.trace().real();
    require(t > 0.0, "cannot normalize a matrix with non-positive trace");
    matrix *= 1.0 / t;
    return DensityMatrix(qubits, std::move(matrix), tol);
  }

  static DensityMatrix maximally_mixed(int qubits) {
    const std::size_t dim = std::size_t{1} << qubits;
    return DensityMatrix(qubits, ComplexMatrix::identity(dim) * Complex(1.0 / double(dim)));
  }

  int qubits() const { return qubits_; }
  std::size_t dim() const { return matrix_.dim(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

 private:
  int qubits_;
  ComplexMatrix matrix_;
};

inline double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return frobenius_distance(a.matrix(), b.matrix());
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(a.qubits() + b.qubits(), tensor(a.matrix(), b.matrix()));
}

/// An unordered split of qubits {1..n} into two nonempty sides. Partial
/// transposes act on the right side.
class Bipartition {
 public:
  Bipartition(int qubits, std::vector<int> left) : qubits_(qubits), left_(std::move(left)) {
    require(qubits >= 2, "a bipartition needs at least two qubits");
    std::sort(left_.begin(), left_.end());
    detail::mask_of(qubits, left_);  // range and duplicate check
    right_ = detail::complement(qubits, left_);
    require(!left_.empty() && !right_.empty(), "both sides of a bipartition must be nonempty");
  }

  int qubits() const { return qubits_; }
  const std::vector<int>& left() const { return left_; }
  const std::vector<int>& right() const { return right_; }
  Bipartition swapped() const { return Bipartition(qubits_, right_); }

  std::string to_string() const {
    std::ostringstream os;
    auto side = [&os](const std::vector<int>& s) {
      os << '{';
      for (std::size_t k = 0; k < s.size(); ++k) os << (k ? "," : "") << s[k];
      os << '}';
    };
    side(left_);
    os << '|';
    side(right_);
    return os.str();
  }

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  int qubits_;
  std::vector<int> left_;
  std::vector<int> right_;
};

/// Transposes the listed qubits' indices. Any subset is allowed, including
/// the empty set and all qubits.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, int qubits,
                                       std::span<const int> transposed) {
  require(detail::is_power_of_two_dim(m.dim(), qubits), "matrix dimension must be 2^qubits");
  const std::uint64_t mask = detail::mask_of(qubits, transposed);
  const std::size_t d = m.dim();
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t ni = (i & ~mask) | (j & mask);
      const std::size_t nj = (j & ~mask) | (i & mask);
      out(ni, nj) = m(i, j);
    }
  return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, const Bipartition& cut) {
  require(cut.qubits() == rho.qubits(), "bipartition does not match the state's qubit count");
  return partial_transpose(rho.matrix(), rho.qubits(), cut.right());
}

/// Traces out every qubit not in `keep`. The result's qubits follow the
/// ascending order of `keep`.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, int qubits, std::span<const int> keep) {
  require(detail::is_power_of_two_dim(m.dim(), qubits), "matrix dimension must be 2^qubits");
  require(!keep.empty(), "partial_trace: keep set is empty");
  const std::uint64_t keep_mask = detail::mask_of(qubits, keep);
  const std::uint64_t full = (std::uint64_t{1} << qubits) - 1;
  const std::uint64_t traced_mask = full & ~keep_mask;
  const int kept = static_cast<int>(keep.size());
  const std::size_t dk = std::size_t{1} << kept;
  const std::size_t dt = std::size_t{1} << (qubits - kept);

  std::vector<std::uint64_t> kept_index(dk);
  for (std::size_t k = 0; k < dk; ++k) kept_index[k] = detail::deposit(k, keep_mask);
  std::vector<std::uint64_t> traced_index(dt);
  for (std::size_t t = 0; t < dt; ++t) traced_index[t] = detail::deposit(t, traced_mask);

  ComplexMatrix out(dk);
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = 0; b < dk; ++b) {
      Complex s{};
      for (std::size_t t = 0; t < dt; ++t)
        s += m(kept_index[a] | traced_index[t], kept_index[b] | traced_index[t]);
      out(a, b) = s;
    }
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  return DensityMatrix(static_cast<int>(keep.size()),
                       partial_trace(rho.matrix(), rho.qubits(), keep));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

/// Sparse amplitude list, (basis index, amplitude).
using SparseAmplitudes = std::vector<std::pair<std::uint64_t, Complex>>;

/// <v|_S m |v>_S for a vector v living on the ordered qubit list S (the
/// first listed qubit is v's most significant bit). The result acts on the
/// remaining qubits in ascending order.
inline ComplexMatrix contract_subsystem(const ComplexMatrix& m, int qubits,
                                        std::span<const int> subsystem,
                                        const SparseAmplitudes& v) {
  require(detail::is_power_of_two_dim(m.dim(), qubits), "matrix dimension must be 2^qubits");
  detail::mask_of(qubits, subsystem);
  const int ns = static_cast<int>(subsystem.size());
  require(ns >= 1 && ns < qubits, "contract_subsystem: subsystem must be a proper nonempty subset");
  const std::vector<int> rest = detail::complement(qubits, subsystem);
  const std::uint64_t rest_mask = detail::mask_of(qubits, rest);

  // Place v's bits onto their qubits.
  auto place = [&](std::uint64_t local) {
    std::uint64_t out = 0;
    for (int k = 0; k < ns; ++k)
      if ((local >> (ns - 1 - k)) & 1u)
        out |= std::uint64_t{1} << detail::shift_of(qubits, subsystem[k]);
    return out;
  };
  std::vector<std::pair<std::uint64_t, Complex>> placed;
  placed.reserve(v.size());
  for (const auto& [idx, amp] : v) {
    require(idx < (std::uint64_t{1} << ns), "contract_subsystem: amplitude index out of range");
    if (amp != Complex{}) placed.emplace_back(place(idx), amp);
  }

  const std::size_t dr = std::size_t{1} << rest.size();
  std::vector<std::uint64_t> rest_index(dr);
  for (std::size_t r = 0; r < dr; ++r) rest_index[r] = detail::deposit(r, rest_mask);

  ComplexMatrix out(dr);
  for (std::size_t a = 0; a < dr; ++a)
    for (std::size_t b = 0; b < dr; ++b) {
      Complex s{};
      for (const auto& [si, sa] : placed)
        for (const auto& [ti, ta] : placed)
          s += std::conj(sa) * ta * m(rest_index[a] | si, rest_index[b] | ti);
      out(a, b) = s;
    }
  return out;
}

/// Relabels qubits: the content of qubit j moves to position perm[j-1].
/// Equivalent to conjugation by the induced basis-permutation unitary.
inline ComplexMatrix apply_qubit_permutation(const ComplexMatrix& m, int qubits,
                                             std::span<const int> perm) {
  require(detail::is_power_of_two_dim(m.dim(), qubits), "matrix dimension must be 2^qubits");
  require(static_cast<int>(perm.size()) == qubits, "permutation length must equal qubit count");
  std::vector<bool> seen(qubits + 1, false);
  for (int p : perm) {
    require(p >= 1 && p <= qubits && !seen[p], "qubit permutation is not a bijection");
    seen[p] = true;
  }
  const std::size_t d = m.dim();
  std::vector<std::size_t> image(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t out = 0;
    for (int j = 1; j <= qubits; ++j)
      if ((i >> detail::shift_of(qubits, j)) & 1u)
        out |= std::size_t{1} << detail::shift_of(qubits, perm[j - 1]);
    image[i] = out;
  }
  ComplexMatrix result(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) result(image[i], image[j]) = m(i, j);
  return result;
}

inline DensityMatrix apply_qubit_permutation(const DensityMatrix& rho, std::span<const int> perm) {
  return DensityMatrix(rho.qubits(), apply_qubit_permutation(rho.matrix(), rho.qubits(), perm));
}

inline std::vector<int> transposition(int qubits, int a, int b) {
  require(a >= 1 && a <= qubits && b >= 1 && b <= qubits, "transposition index out of range");
  std::vector<int> perm(qubits);
  std::iota(perm.begin(), perm.end(), 1);
  std::swap(perm[a - 1], perm[b - 1]);
  return perm;
}

/// U_q m U_q^dagger for a 2x2 `u` acting on qubit q.
inline ComplexMatrix conjugate_single_qubit(const ComplexMatrix& m, int qubits, int q,
                                            const ComplexMatrix& u) {
  require(u.dim() == 2, "single-qubit operator must be 2x2");
  require(detail::is_power_of_two_dim(m.dim(), qubits), "matrix dimension must be 2^qubits");
  require(q >= 1 && q <= qubits, "qubit index out of range");
  const std::size_t bit = std::size_t{1} << detail::shift_of(qubits, q);
  const std::size_t d = m.dim();
  ComplexMatrix left(d);  // U m
  for (std::size_t i = 0; i < d; ++i) {
    if (i & bit) continue;
    const std::size_t i1 = i | bit;
    for (std::size_t j = 0; j < d; ++j) {
      const Complex m0 = m(i, j), m1 = m(i1, j);
      left(i, j) = u(0, 0) * m0 + u(0, 1) * m1;
      left(i1, j) = u(1, 0) * m0 + u(1, 1) * m1;
    }
  }
  ComplexMatrix out(d);  // (U m) U^dagger
  for (std::size_t j = 0; j < d; ++j) {
    if (j & bit) continue;
    const std::size_t j1 = j | bit;
    for (std::size_t i = 0; i < d; ++i) {
      const Complex l0 = left(i, j), l1 = left(i, j1);
      out(i, j) = l0 * std::conj(u(0, 0)) + l1 * std::conj(u(0, 1));
      out(i, j1) = l0 * std::conj(u(1, 0)) + l1 * std::conj(u(1, 1));
    }
  }
  return out;
}

enum class Pauli { I, X, Y, Z };

inline ComplexMatrix pauli_matrix(Pauli p) {
  ComplexMatrix m(2);
  switch (p) {
    case Pauli::I: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case Pauli::X: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case Pauli::Y: m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
    case Pauli::Z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

namespace detail {

// Cyclic complex Jacobi on a dense Hermitian block. Each rotation is
// G = D R D^dagger with D = diag(1, e^{-i phi}) removing the phase of the
// pivot and R the real symmetric Jacobi rotation.
inline void jacobi_in_place(ComplexMatrix& a, ComplexMatrix& v, double stop_ratio) {
  const std::size_t d = a.dim();
  v = ComplexMatrix::identity(d);
  if (d < 2) return;
  const double scale = a.frobenius_norm();
  if (scale == 0.0) return;

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() < stop_ratio * scale) break;
    for (std::size_t p = 0; p + 1 < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300 || mag < 1e-18 * scale) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const Complex phase = apq / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex s_up = s * phase;             // s e^{i phi}
        const Complex s_dn = s * std::conj(phase);  // s e^{-i phi}

        for (std::size_t k = 0; k < d; ++k) {  // columns: A G
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s_dn * akq;
          a(k, q) = s_up * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {  // rows: G^dagger (A G)
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s_up * aqk;
          a(q, k) = s_dn * apk + c * aqk;
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s_dn * vkq;
          v(k, q) = s_up * vkp + c * vkq;
        }
      }
  }
}

// Connected components of the nonzero pattern; eigenproblems decouple
// across them exactly.
inline std::vector<std::vector<std::size_t>> sparsity_blocks(const ComplexMatrix& m) {
  const std::size_t d = m.dim();
  std::vector<std::size_t> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (m(i, j) != Complex{} || m(j, i) != Complex{}) {
        const std::size_t ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == d) {
      slot[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

}  // namespace detail

/// Full eigendecomposition of a Hermitian matrix (ascending eigenvalues).
/// Works on a private copy. Throws if `m` is not Hermitian within 1e-10.
inline EigenSystem hermitian_eigensystem(const ComplexMatrix& m,
                                         const Tolerances& tol = kDefaultTolerances) {
  require(m.is_hermitian(1e-10), "hermitian_eigensystem: input is not Hermitian");
  const std::size_t d = m.dim();
  std::vector<double> values(d);
  ComplexMatrix vectors(d);
  for (const auto& block : detail::sparsity_blocks(m)) {
    const std::size_t b = block.size();
    ComplexMatrix sub(b), subv;
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j) sub(i, j) = m(block[i], block[j]);
    for (std::size_t i = 0; i < b; ++i) sub(i, i) = sub(i, i).real();
    detail::jacobi_in_place(sub, subv, tol.eigen_convergence);
    for (std::size_t k = 0; k < b; ++k) {
      values[block[k]] = sub(k, k).real();
      for (std::size_t i = 0; i < b; ++i) vectors(block[i], block[k]) = subv(i, k);
    }
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  EigenSystem out{std::vector<double>(d), ComplexMatrix(d)};
  for (std::size_t k = 0; k < d; ++k) {
    out.values[k] = values[order[k]];
    for (std::size_t i = 0; i < d; ++i) out.vectors(i, k) = vectors(i, order[k]);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m,
                                                 const Tolerances& tol = kDefaultTolerances) {
  return hermitian_eigensystem(m, tol).values;
}

/// max_k ||M v_k - lambda_k v_k||, for checking a decomposition.
inline double max_eigen_residual(const ComplexMatrix& m, const EigenSystem& es) {
  const std::size_t d = m.dim();
  double worst = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      Complex r = -es.values[k] * es.vectors(i, k);
      for (std::size_t j = 0; j < d; ++j) r += m(i, j) * es.vectors(j, k);
      s += std::norm(r);
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

inline double min_eigenvalue(const DensityMatrix& rho) {
  return hermitian_eigenvalues(rho.matrix()).front();
}

inline std::size_t numerical_rank(const ComplexMatrix& m, double tol = 1e-10) {
  const auto values = hermitian_eigenvalues(m);
  const double scale = std::max(1.0, std::abs(values.back()));
  return static_cast<std::size_t>(std::count_if(
      values.begin(), values.end(), [&](double v) { return std::abs(v) > tol * scale; }));
}

// ---------------------------------------------------------------------------
// Text dump: "dim=<d>" then d*d lines "i j re im".

inline void write_matrix_dump(std::ostream& os, const ComplexMatrix& m) {
  os << "dim=" << m.dim() << '\n';
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      os << i << ' ' << j << ' ' << format_double(m(i, j).real()) << ' '
         << format_double(m(i, j).imag()) << '\n';
}

inline ComplexMatrix read_matrix_dump(std::istream& is) {
  std::string header;
  require(static_cast<bool>(std::getline(is, header)) && header.rfind("dim=", 0) == 0,
          "matrix dump: missing dim header");
  const std::size_t dim = std::stoul(header.substr(4));
  ComplexMatrix m(dim);
  std::vector<bool> seen(dim * dim, false);
  std::size_t i, j;
  double re, im;
  std::size_t count = 0;
  while (is >> i >> j >> re >> im) {
    require(i < dim && j < dim && !seen[i * dim + j], "matrix dump: bad or repeated entry");
    seen[i * dim + j] = true;
    m(i, j) = Complex(re, im);
    ++count;
  }
  require(count == dim * dim, "matrix dump: expected dim*dim entries");
  return m;
}

}  // namespace bcabe
