// Copyright 2026 the petz authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "petz/errors.hpp"

namespace petz {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. The substrate for states, Kraus
/// operators and unitaries. Sizes stay small (<= 64x64 plus Fock fixtures).
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, cplx(0, 0)) {
    if (rows <= 0 || cols <= 0) throw error(errc::dimension_mismatch, "non-positive dims");
  }
  ComplexMatrix(int rows, int cols, std::initializer_list<cplx> entries)
      : ComplexMatrix(rows, cols) {
    if (static_cast<int>(entries.size()) != rows * cols)
      throw error(errc::dimension_mismatch, "entry count");
    std::copy(entries.begin(), entries.end(), a_.begin());
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  const std::vector<cplx>& data() const { return a_; }
  std::vector<cplx>& data() { return a_; }

  ComplexMatrix dagger() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
  }

  cplx trace() const {
    if (rows_ != cols_) throw error(errc::non_square, "trace");
    cplx t = 0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  bool is_finite() const {
    for (const auto& v : a_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  bool is_square() const { return rows_ == cols_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same(o);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same(o);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= cplx(s, 0); }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= cplx(s, 0); }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw error(errc::dimension_mismatch, "matmul");
    ComplexMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0, 0)) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

 private:
  void check_same(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw error(errc::dimension_mismatch, "shape");
  }

  int rows_, cols_;
  std::vector<cplx> a_;
};

inline double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).frobenius_norm();
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0, 0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

enum class Subsystem { A, B };

/// Tr_B or Tr_A of a bipartite operator on C^{dA} ⊗ C^{dB}.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, int d_a, int d_b, Subsystem keep) {
  if (!rho.is_square() || rho.rows() != d_a * d_b)
    throw error(errc::dimension_mismatch, "partial_trace");
  if (keep == Subsystem::A) {
    ComplexMatrix r(d_a, d_a);
    for (int i = 0; i < d_a; ++i)
      for (int j = 0; j < d_a; ++j)
        for (int k = 0; k < d_b; ++k) r(i, j) += rho(i * d_b + k, j * d_b + k);
    return r;
  }
  ComplexMatrix r(d_b, d_b);
  for (int i = 0; i < d_b; ++i)
    for (int j = 0; j < d_b; ++j)
      for (int k = 0; k < d_a; ++k) r(i, j) += rho(k * d_b + i, k * d_b + j);
  return r;
}

inline ComplexMatrix pauli_x() { return ComplexMatrix(2, 2, {0, 1, 1, 0}); }
inline ComplexMatrix pauli_y() { return ComplexMatrix(2, 2, {0, cplx(0, -1), cplx(0, 1), 0}); }
inline ComplexMatrix pauli_z() { return ComplexMatrix(2, 2, {1, 0, 0, -1}); }
inline ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix(2, 2, {s, s, s, -s});
}

/// Single-qubit gate embedded into `width` qubits; qubit 0 is the most
/// significant tensor factor.
inline ComplexMatrix embed_single(const ComplexMatrix& g, int qubit, int width) {
  if (g.rows() != 2 || g.cols() != 2) throw error(errc::dimension_mismatch, "embed_single");
  if (qubit < 0 || qubit >= width) throw error(errc::index_out_of_range, "qubit");
  const int n = 1 << width;
  const int shift = width - 1 - qubit;
  ComplexMatrix r(n, n);
  for (int b = 0; b < n; ++b) {
    const int bit = (b >> shift) & 1;
    for (int bit2 = 0; bit2 < 2; ++bit2) {
      const cplx v = g(bit2, bit);
      if (v == cplx(0, 0)) continue;
      const int b2 = (b & ~(1 << shift)) | (bit2 << shift);
      r(b2, b) += v;
    }
  }
  return r;
}

/// Two-qubit gate (4x4, first gate factor = qubit qa) embedded into `width` qubits.
inline ComplexMatrix embed_pair(const ComplexMatrix& g, int qa, int qb, int width) {
  if (g.rows() != 4 || g.cols() != 4) throw error(errc::dimension_mismatch, "embed_pair");
  if (qa == qb || qa < 0 || qb < 0 || qa >= width || qb >= width)
    throw error(errc::index_out_of_range, "qubit pair");
  const int n = 1 << width;
  const int sa = width - 1 - qa;
  const int sb = width - 1 - qb;
  ComplexMatrix r(n, n);
  for (int b = 0; b < n; ++b) {
    const int sub = (((b >> sa) & 1) << 1) | ((b >> sb) & 1);
    for (int sub2 = 0; sub2 < 4; ++sub2) {
      const cplx v = g(sub2, sub);
      if (v == cplx(0, 0)) continue;
      int b2 = b & ~(1 << sa) & ~(1 << sb);
      b2 |= ((sub2 >> 1) & 1) << sa;
      b2 |= (sub2 & 1) << sb;
      r(b2, b) += v;
    }
  }
  return r;
}

}  // namespace petz
