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

#include <array>
#include <cmath>
#include <vector>

#include "petz/circuit.hpp"
#include "petz/linalg.hpp"
#include "petz/matrix.hpp"
#include "petz/su4.hpp"

namespace petz {
namespace detail {

// ---- cosine-sine decomposition, balanced 8x8 ----
struct Csd8 {
  ComplexMatrix l1, l2, r1, r2;      // U = blkdiag(l1,l2) CS blkdiag(r1,r2)^dag
  std::array<double, 4> theta{};     // CS = [[C,-S],[S,C]]
};

inline Csd8 csd8(const ComplexMatrix& u) {
  const int m = 4;
  ComplexMatrix u11(m, m), u12(m, m), u21(m, m), u22(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      u11(i, j) = u(i, j);
      u12(i, j) = u(i, j + m);
      u21(i, j) = u(i + m, j);
      u22(i, j) = u(i + m, j + m);
    }
  Svd sv = svd(u11);
  Csd8 out;
  out.l1 = sv.u;
  out.r1 = sv.v;
  std::array<double, 4> c{}, s{};
  for (int i = 0; i < m; ++i) c[i] = std::clamp(sv.singulars[i], 0.0, 1.0);
  for (int i = 0; i < m; ++i) s[i] = std::sqrt(std::max(0.0, 1.0 - c[i] * c[i]));
  ComplexMatrix t = u21 * out.r1;
  out.l2 = ComplexMatrix(m, m);
  std::vector<int> fixed;
  for (int i = 0; i < m; ++i) {
    double nrm = 0;
    for (int r = 0; r < m; ++r) nrm += std::norm(t(r, i));
    nrm = std::sqrt(nrm);
    if (nrm > 1e-8) {
      for (int r = 0; r < m; ++r) out.l2(r, i) = t(r, i) / nrm;
      fixed.push_back(i);
    }
  }
  // clean near-degenerate directions, then complete the free columns
  ComplexMatrix part(m, std::max<int>(1, static_cast<int>(fixed.size())));
  if (!fixed.empty()) {
    part = ComplexMatrix(m, static_cast<int>(fixed.size()));
    for (size_t k = 0; k < fixed.size(); ++k) {
      std::vector<cplx> v(m);
      for (int r = 0; r < m; ++r) v[r] = out.l2(r, fixed[k]);
      for (size_t pk = 0; pk < k; ++pk) {
        cplx ov(0, 0);
        for (int r = 0; r < m; ++r) ov += std::conj(part(r, static_cast<int>(pk))) * v[r];
        for (int r = 0; r < m; ++r) v[r] -= ov * part(r, static_cast<int>(pk));
      }
      double nv = 0;
      for (int r = 0; r < m; ++r) nv += std::norm(v[r]);
      nv = std::sqrt(nv);
      for (int r = 0; r < m; ++r) part(r, static_cast<int>(k)) = v[r] / nv;
    }
    for (size_t k = 0; k < fixed.size(); ++k)
      for (int r = 0; r < m; ++r) out.l2(r, fixed[k]) = part(r, static_cast<int>(k));
  }
  if (static_cast<int>(fixed.size()) < m) {
    ComplexMatrix full =
        fixed.empty() ? ComplexMatrix::identity(m) : gram_schmidt_complete(part);
    int next = static_cast<int>(fixed.size());
    for (int i = 0; i < m; ++i) {
      bool is_fixed = false;
      for (int f : fixed) is_fixed |= (f == i);
      if (!is_fixed) {
        for (int r = 0; r < m; ++r) out.l2(r, i) = full(r, next);
        ++next;
      }
    }
  }
  // R2 rows from the better-conditioned path
  ComplexMatrix a = cplx(-1, 0) * (out.l1.dagger() * u12);  // = S R2^dag
  ComplexMatrix b = out.l2.dagger() * u22;                  // = C R2^dag
  ComplexMatrix r2h(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      r2h(i, j) = (s[i] > c[i]) ? a(i, j) / s[i] : b(i, j) / c[i];
  out.r2 = r2h.dagger();
  for (int i = 0; i < m; ++i) out.theta[i] = std::atan2(s[i], c[i]);
  return out;
}

// ---- demultiplexing: u0 ⊕ u1 = (I⊗V) muxRz(th) (I⊗W) ----
inline void demux(const ComplexMatrix& u0, const ComplexMatrix& u1, ComplexMatrix& v,
                  std::array<double, 4>& th, ComplexMatrix& w) {
  ComplexMatrix prod = u0 * u1.dagger();
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(to_eigen(prod));
  if (schur.info() != Eigen::Success) throw error(errc::convergence_failure, "demux schur");
  Eigen::MatrixXcd tt = schur.matrixT();
  double off = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) off += std::norm(tt(i, j));
  if (std::sqrt(off) > 1e-8) throw error(errc::convergence_failure, "demux not normal");
  v = from_eigen(schur.matrixU());
  ComplexMatrix dhalf(4, 4);
  for (int i = 0; i < 4; ++i) {
    const double psi = std::arg(tt(i, i)) / 2.0;
    dhalf(i, i) = std::polar(1.0, psi);
    th[i] = -2.0 * psi;
  }
  w = dhalf * v.dagger() * u1;
}

// ---- uniformly controlled rotation ladders (target qubit 0) ----
inline std::array<double, 4> ladder_solve_muxrz(const std::array<double, 4>& th) {
  // sector (z1,z2): sum_k (-1)^{sum_{j>=k} z_{c_j}} t_k, controls (1,2,1,2)
  static const int controls[4] = {1, 2, 1, 2};
  Eigen::Matrix4d a;
  for (int zi = 0; zi < 4; ++zi) {
    const int z1 = (zi >> 1) & 1, z2 = zi & 1;
    for (int k = 0; k < 4; ++k) {
      int par = 0;
      for (int j = k; j < 4; ++j) par += (controls[j] == 1) ? z1 : z2;
      a(zi, k) = (par % 2) ? -1.0 : 1.0;
    }
  }
  Eigen::Vector4d rhs(th[0], th[1], th[2], th[3]);
  Eigen::Vector4d t = a.colPivHouseholderQr().solve(rhs);
  return {t(0), t(1), t(2), t(3)};
}

inline void emit_muxrz(std::vector<Gate>& out, const std::array<double, 4>& th) {
  const auto t = ladder_solve_muxrz(th);
  static const int controls[4] = {1, 2, 1, 2};
  for (int k = 0; k < 4; ++k) {
    out.push_back(Gate::rz(0, t[k]));
    out.push_back(Gate::cnot(controls[k], 0));
  }
}

/// muxRy(th) * CZ(2,0) as a 3-entangler ladder:
/// time order Ry(t1) CZ(1,0) Ry(t2) CZ(2,0) Ry(t3) CZ(1,0) Ry(t4), with
/// sector angles Psi = t4 + (-1)^{z1} t3 + (-1)^{z1^z2} t2 + (-1)^{z2} t1.
inline void emit_muxry_cz(std::vector<Gate>& out, const std::array<double, 4>& th) {
  Eigen::Matrix4d a;
  for (int zi = 0; zi < 4; ++zi) {
    const int z1 = (zi >> 1) & 1, z2 = zi & 1;
    a(zi, 0) = (z2 % 2) ? -1.0 : 1.0;
    a(zi, 1) = ((z1 ^ z2) % 2) ? -1.0 : 1.0;
    a(zi, 2) = (z1 % 2) ? -1.0 : 1.0;
    a(zi, 3) = 1.0;
  }
  Eigen::Vector4d rhs(th[0], th[1], th[2], th[3]);
  Eigen::Vector4d t = a.colPivHouseholderQr().solve(rhs);
  out.push_back(Gate::ry(0, t(0)));
  emit_cz(out, 1, 0);
  out.push_back(Gate::ry(0, t(1)));
  emit_cz(out, 2, 0);
  out.push_back(Gate::ry(0, t(2)));
  emit_cz(out, 1, 0);
  out.push_back(Gate::ry(0, t(3)));
}

/// Diagonal Delta = diag(e^{ig},e^{-ig},e^{-ig},e^{ig}) such that
/// Delta^dag U has a conjugation-closed canonical spectrum (two-CNOT class).
inline ComplexMatrix up_to_diag_delta(const ComplexMatrix& u) {
  Eigen::Matrix4cd ue = to_eigen(u);
  const cplx det = ue.determinant();
  ComplexMatrix us = u * (1.0 / std::pow(det, 0.25));
  const ComplexMatrix& b = magic_basis();
  ComplexMatrix m = b.dagger() * us * b;
  ComplexMatrix n = m * m.transpose();
  const cplx p = n(0, 0) + n(3, 3);
  const cplx q = n(1, 1) + n(2, 2);
  const double num = p.imag() + q.imag();
  const double den = q.real() - p.real();
  double g = 0.5 * std::atan2(-num, den);
  auto mk = [](double gg) {
    ComplexMatrix d(4, 4);
    d(0, 0) = std::polar(1.0, gg);
    d(1, 1) = std::polar(1.0, -gg);
    d(2, 2) = std::polar(1.0, -gg);
    d(3, 3) = std::polar(1.0, gg);
    return d;
  };
  const cplx tr = p * std::polar(1.0, -2 * g) + q * std::polar(1.0, 2 * g);
  if (std::abs(tr.imag()) > 1e-9) g += M_PI / 2;
  return mk(g);
}

/// Synthesis of a two-CNOT-class unitary (conjugation-closed spectrum) on
/// (qa, qb): exactly 2 entanglers.
inline std::vector<Gate> su4_2cnot_gates(const ComplexMatrix& v, int qa, int qb) {
  KakDecomposition k = kak_decompose(v, /*pair_for_c0=*/true);
  std::vector<Gate> out;
  emit_1q(out, k.b1, qa);
  emit_1q(out, k.b0, qb);
  // z ~ 0 by pairing; W(x,y,0) = (Vc^dag⊗Vc^dag) W(x,0,y) (Vc⊗Vc)
  out.push_back(Gate::rx(qa, M_PI / 2));
  out.push_back(Gate::rx(qb, M_PI / 2));
  emit_w_xz(out, k.x, k.y, qa, qb);
  out.push_back(Gate::rx(qa, -M_PI / 2));
  out.push_back(Gate::rx(qb, -M_PI / 2));
  emit_1q(out, k.a1, qa);
  emit_1q(out, k.a0, qb);
  return out;
}

/// Try to split off qubit `which` as a tensor factor: U = u2 ⊗ rest (after
/// moving `which` to the most significant slot). Returns true on success.
inline bool try_split_qubit(const ComplexMatrix& u, int which, ComplexMatrix& u2,
                            ComplexMatrix& rest) {
  // permute bits so `which` is MSB
  auto perm_index = [&](int idx) {
    const int bits[3] = {(idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
    int out_bits[3];
    out_bits[0] = bits[which];
    int k = 1;
    for (int q = 0; q < 3; ++q)
      if (q != which) out_bits[k++] = bits[q];
    return (out_bits[0] << 2) | (out_bits[1] << 1) | out_bits[2];
  };
  ComplexMatrix up(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) up(perm_index(i), perm_index(j)) = u(i, j);
  // reshuffle: R[(i,j),(a,b)] = up[(i,a),(j,b)], i,j qubit bits, a,b in 0..3
  Eigen::MatrixXcd r(4, 16);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a2 = 0; a2 < 4; ++a2)
        for (int b2 = 0; b2 < 4; ++b2)
          r(i * 2 + j, a2 * 4 + b2) = up(i * 4 + a2, j * 4 + b2);
  Eigen::JacobiSVD<Eigen::MatrixXcd> s(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (s.singularValues()(1) > 1e-9 * s.singularValues()(0)) return false;
  // unitary factors have Frobenius norms sqrt(2) and 2; split sigma0 = 2*sqrt(2)
  const double s0 = s.singularValues()(0);
  u2 = ComplexMatrix(2, 2);
  rest = ComplexMatrix(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) u2(i, j) = s.matrixU()(i * 2 + j, 0) * std::sqrt(2.0);
  for (int a2 = 0; a2 < 4; ++a2)
    for (int b2 = 0; b2 < 4; ++b2)
      rest(a2, b2) = std::conj(s.matrixV()(a2 * 4 + b2, 0)) * (s0 / std::sqrt(2.0));
  if (distance(kron(u2, rest), up) > 1e-8) {
    for (int a2 = 0; a2 < 4; ++a2)
      for (int b2 = 0; b2 < 4; ++b2)
        rest(a2, b2) = s.matrixV()(a2 * 4 + b2, 0) * (s0 / std::sqrt(2.0));
    if (distance(kron(u2, rest), up) > 1e-8) return false;
  }
  return true;
}

}  // namespace detail

/// Three-qubit synthesis: quantum-Shannon-style chain with a merged central
/// multiplexed-Ry ladder and two-CNOT demultiplexed blocks; at most 20
/// entanglers on any input. Qubit 0 is the most significant factor.
inline GateSequence decompose_3q(const ComplexMatrix& u) {
  if (u.rows() != 8 || u.cols() != 8) throw error(errc::dimension_mismatch, "decompose_3q");
  if (distance(u.dagger() * u, ComplexMatrix::identity(8)) > 1e-9)
    throw error(errc::not_unitary, "decompose_3q");
  GateSequence gs;
  gs.width = 3;
  // separable inputs route through the two-qubit synthesizer
  for (int q = 0; q < 3; ++q) {
    ComplexMatrix u2, rest;
    if (detail::try_split_qubit(u, q, u2, rest)) {
      int others[2], k = 0;
      for (int a = 0; a < 3; ++a)
        if (a != q) others[k++] = a;
      detail::emit_1q(gs.gates, u2, q);
      auto sub = su4_gates(rest, others[0], others[1]);
      gs.gates.insert(gs.gates.end(), sub.begin(), sub.end());
      gs = merge_adjacent_rotations(gs);
      return gs;
    }
  }
  detail::Csd8 cs = detail::csd8(u);
  // muxRy(2 theta) = [3-entangler ladder] * CZ(2,0); CZ folds into the right
  // CSD block pair: CZ(2,0) (R1^dag ⊕ R2^dag) = R1^dag ⊕ (Z_q2 R2^dag)
  ComplexMatrix zq2 = kron(ComplexMatrix::identity(2), pauli_z());
  ComplexMatrix right0 = cs.r1.dagger();
  ComplexMatrix right1 = zq2 * cs.r2.dagger();
  ComplexMatrix vl, wl, vr, wr;
  std::array<double, 4> th_l{}, th_r{};
  detail::demux(cs.l1, cs.l2, vl, th_l, wl);
  detail::demux(right0, right1, vr, th_r, wr);
  // diagonal sheds migrate toward the final full block
  ComplexMatrix d_wr = detail::up_to_diag_delta(wr);
  ComplexMatrix wr_c = d_wr.dagger() * wr;
  ComplexMatrix vr2 = vr * d_wr;
  ComplexMatrix d_vr = detail::up_to_diag_delta(vr2);
  ComplexMatrix vr_c = d_vr.dagger() * vr2;
  ComplexMatrix wl2 = wl * d_vr;
  ComplexMatrix d_wl = detail::up_to_diag_delta(wl2);
  ComplexMatrix wl_c = d_wl.dagger() * wl2;
  ComplexMatrix vl2 = vl * d_wl;
  std::array<double, 4> th_y{};
  for (int i = 0; i < 4; ++i) th_y[i] = 2.0 * cs.theta[i];
  auto append = [&](const std::vector<Gate>& g) {
    gs.gates.insert(gs.gates.end(), g.begin(), g.end());
  };
  append(detail::su4_2cnot_gates(wr_c, 1, 2));
  detail::emit_muxrz(gs.gates, th_r);
  append(detail::su4_2cnot_gates(vr_c, 1, 2));
  detail::emit_muxry_cz(gs.gates, th_y);
  append(detail::su4_2cnot_gates(wl_c, 1, 2));
  detail::emit_muxrz(gs.gates, th_l);
  append(su4_gates(vl2, 1, 2));
  gs = merge_adjacent_rotations(gs);
  if (gs.entangler_count() > 20)
    throw error(errc::budget_exceeded, "three-qubit synthesis exceeded 20 entanglers");
  return gs;
}

}  // namespace petz
