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
#include <vector>

#include "petz/linalg.hpp"
#include "petz/matrix.hpp"
#include "petz/petz_map.hpp"

namespace petz {

/// Unitary extension of a CPTP qubit map: ancilla register (most significant
/// tensor factor) starts in |0...0>, block (m,0) of U holds Kraus operator m.
struct DilationUnitary {
  ComplexMatrix u;
  int kraus_rank = 0;          // number of stacked operators before padding
  int ancilla_qubits = 0;      // 1 for M<=2, 2 for M in {3,4}
  std::vector<int> padding;    // zero-padded block slots

  int ancilla_dim() const { return 1 << ancilla_qubits; }
  int total_dim() const { return u.rows(); }
};

namespace detail {

inline ComplexMatrix stack_kraus_column(const std::vector<ComplexMatrix>& ks, int m_padded) {
  ComplexMatrix col(2 * m_padded, 2);
  for (int m = 0; m < static_cast<int>(ks.size()); ++m)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) col(2 * m + i, j) = ks[m](i, j);
  return col;
}

}  // namespace detail

inline DilationUnitary dilate_general(const PetzMap& pm) {
  std::vector<ComplexMatrix> ks = pm.all_kraus();
  // drop exact-zero completion slots but keep declared order
  std::vector<ComplexMatrix> live;
  for (const auto& k : ks)
    if (k.frobenius_norm() > 1e-14) live.push_back(k);
  const int m = static_cast<int>(live.size());
  if (m > 4) throw error(errc::rank_unsupported, "Kraus rank > 4");
  const int m_padded = (m <= 2) ? 2 : 4;
  DilationUnitary d;
  d.kraus_rank = m;
  d.ancilla_qubits = (m_padded == 2) ? 1 : 2;
  for (int i = m; i < m_padded; ++i) d.padding.push_back(i);
  ComplexMatrix col = detail::stack_kraus_column(live, m_padded);
  d.u = phase_normalize(gram_schmidt_complete(col));
  return d;
}

/// Analytic dilation for rank-2 maps via the singular value decomposition of
/// K_1: U = blockdiag(U0~, U1) * D * blockdiag(V1^dag, G), G = I.
inline DilationUnitary dilate_rank2_analytic(const PetzMap& pm) {
  if (pm.kraus.size() != 2 || pm.completed())
    throw error(errc::rank_mismatch, "analytic dilation needs rank 2");
  const ComplexMatrix& k0 = pm.kraus[0];
  const ComplexMatrix& k1 = pm.kraus[1];
  Svd s1 = svd(k1);
  ComplexMatrix d1(2, 2);
  d1(0, 0) = s1.singulars[0];
  d1(1, 1) = s1.singulars[1];
  ComplexMatrix d0t(2, 2);
  for (int i = 0; i < 2; ++i) {
    const double v = 1.0 - s1.singulars[i] * s1.singulars[i];
    d0t(i, i) = std::sqrt(std::max(v, 0.0));
  }
  // U0~ columns from K0 V1 D0~^{-1}; degenerate columns completed orthonormally
  ComplexMatrix kv = k0 * s1.v;
  ComplexMatrix u0t(2, 2);
  std::vector<int> fixed;
  for (int c = 0; c < 2; ++c) {
    if (std::abs(d0t(c, c)) > 1e-9) {
      for (int i = 0; i < 2; ++i) u0t(i, c) = kv(i, c) / d0t(c, c);
      fixed.push_back(c);
    }
  }
  if (fixed.size() < 2) {
    ComplexMatrix part(2, static_cast<int>(fixed.size()));
    for (size_t c = 0; c < fixed.size(); ++c)
      for (int i = 0; i < 2; ++i) part(i, static_cast<int>(c)) = u0t(i, fixed[c]);
    ComplexMatrix full = fixed.empty() ? ComplexMatrix::identity(2) : gram_schmidt_complete(part);
    int next = static_cast<int>(fixed.size());
    for (int c = 0; c < 2; ++c) {
      if (std::abs(d0t(c, c)) <= 1e-9) {
        for (int i = 0; i < 2; ++i) u0t(i, c) = full(i, next);
        ++next;
      }
    }
  }
  // D block: [[D0~, D1*(-i sy)], [D1, D0~*(i sy)]]
  const ComplexMatrix msy = cplx(0, -1) * pauli_y();
  const ComplexMatrix psy = cplx(0, 1) * pauli_y();
  ComplexMatrix top_r = d1 * msy;
  ComplexMatrix bot_r = d0t * psy;
  ComplexMatrix dd(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      dd(i, j) = d0t(i, j);
      dd(i, j + 2) = top_r(i, j);
      dd(i + 2, j) = d1(i, j);
      dd(i + 2, j + 2) = bot_r(i, j);
    }
  ComplexMatrix left(4, 4), right(4, 4);
  const ComplexMatrix v1d = s1.v.dagger();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      left(i, j) = u0t(i, j);
      left(i + 2, j + 2) = s1.u(i, j);
      right(i, j) = v1d(i, j);
      right(i + 2, j + 2) = (i == j) ? 1.0 : 0.0;  // G = I
    }
  DilationUnitary d;
  d.kraus_rank = 2;
  d.ancilla_qubits = 1;
  d.u = phase_normalize(left * dd * right);
  return d;
}

/// Tr_B[U (|0..0><0..0| ⊗ rho) U^dag].
inline ComplexMatrix apply_dilation(const DilationUnitary& d, const ComplexMatrix& rho) {
  const int da = d.ancilla_dim();
  const int n = d.total_dim();
  if (rho.rows() * da != n) throw error(errc::dimension_mismatch, "apply_dilation");
  ComplexMatrix full(n, n);
  for (int i = 0; i < rho.rows(); ++i)
    for (int j = 0; j < rho.cols(); ++j) full(i, j) = rho(i, j);  // ancilla block (0,0)
  ComplexMatrix out = d.u * full * d.u.dagger();
  return partial_trace(out, da, rho.rows(), Subsystem::B);
}

/// Channel induced by a dilation, as a superoperator matrix (column-major vec).
inline ComplexMatrix dilation_superoperator(const DilationUnitary& d) {
  const int ds = d.total_dim() / d.ancilla_dim();
  ComplexMatrix s(ds * ds, ds * ds);
  // columns of the superoperator from matrix units E_{ij}
  for (int i = 0; i < ds; ++i)
    for (int j = 0; j < ds; ++j) {
      ComplexMatrix eij(ds, ds);
      eij(i, j) = 1.0;
      ComplexMatrix out = apply_dilation(d, eij);
      for (int c = 0; c < ds; ++c)
        for (int r = 0; r < ds; ++r) s(c * ds + r, j * ds + i) = out(r, c);
    }
  return s;
}

inline ComplexMatrix kraus_superoperator(const std::vector<ComplexMatrix>& ks, int d) {
  ComplexMatrix s(d * d, d * d);
  for (const auto& k : ks) s += kron(k.conjugate(), k);
  return s;
}

}  // namespace petz
