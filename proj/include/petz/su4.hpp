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

namespace petz {

/// Two-qubit Cartan decomposition U = phase (a1⊗a0) W(x,y,z) (b1⊗b0),
/// W(x,y,z) = exp(i (x XX + y YY + z ZZ)).
struct KakDecomposition {
  cplx phase;
  ComplexMatrix a1, a0;
  double x = 0, y = 0, z = 0;
  ComplexMatrix b1, b0;
};

namespace detail {

inline const ComplexMatrix& magic_basis() {
  static const ComplexMatrix b = [] {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(4, 4);
    m(0, 0) = s; m(0, 3) = cplx(0, s);
    m(1, 1) = cplx(0, s); m(1, 2) = s;
    m(2, 1) = cplx(0, s); m(2, 2) = -s;
    m(3, 0) = s; m(3, 3) = cplx(0, -s);
    return m;
  }();
  return b;
}

/// Simultaneous real-orthogonal diagonalization of a complex symmetric
/// unitary. Deterministic retry over mixing parameters.
inline void sym_unitary_diag(const ComplexMatrix& m, std::array<cplx, 4>& d, ComplexMatrix& p) {
  Eigen::Matrix4d xr, yi;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      xr(i, j) = m(i, j).real();
      yi(i, j) = m(i, j).imag();
    }
  static const double ts[] = {0.6180339887, 0.3141592653, 0.9032, 0.1234,
                              1.1721, 0.4567, 0.7890, 1.4142, 0.2718, 1.6180};
  for (double t : ts) {
    Eigen::Matrix4d mix = 0.5 * (xr + t * yi + (xr + t * yi).transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(mix);
    if (es.info() != Eigen::Success) continue;
    Eigen::Matrix4d pv = es.eigenvectors();
    ComplexMatrix pc(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) pc(i, j) = pv(i, j);
    ComplexMatrix dd = pc.transpose() * m * pc;
    double off = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) off += std::norm(dd(i, j));
    if (std::sqrt(off) < 1e-10) {
      for (int i = 0; i < 4; ++i) d[i] = dd(i, i);
      p = pc;
      return;
    }
  }
  throw error(errc::convergence_failure, "symmetric diagonalization");
}

/// Factor a (phase times) tensor-product unitary into SU(2) pieces.
inline void factor_local(const ComplexMatrix& l, cplx& phase, ComplexMatrix& a,
                         ComplexMatrix& b) {
  // reshuffle: M[(i,j),(k,l)] = L[(i,k),(j,l)] = A(i,j) B(k,l)
  ComplexMatrix m(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l2 = 0; l2 < 2; ++l2) m(i * 2 + j, k * 2 + l2) = l(i * 2 + k, j * 2 + l2);
  Eigen::JacobiSVD<Eigen::MatrixXcd> s(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s0 = std::sqrt(s.singularValues()(0));
  a = ComplexMatrix(2, 2);
  b = ComplexMatrix(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      a(i, j) = s.matrixU()(i * 2 + j, 0) * s0;
      b(i, j) = std::conj(s.matrixV()(i * 2 + j, 0)) * s0;
    }
  if (distance(kron(a, b), l) > 1e-8) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) b(i, j) = s.matrixV()(i * 2 + j, 0) * s0;
  }
  cplx da = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  cplx db = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
  const cplx ra = std::sqrt(da), rb = std::sqrt(db);
  a *= (1.0 / ra);
  b *= (1.0 / rb);
  phase = ra * rb;
  const cplx tr = (kron(a, b).dagger() * l).trace() / 4.0;
  phase *= tr / std::abs(tr);
}

}  // namespace detail

inline ComplexMatrix canonical_gate(double x, double y, double z) {
  // diagonal in the magic basis with phases (x-y+z, x+y-z, -x-y-z, -x+y+z)
  const ComplexMatrix& b = detail::magic_basis();
  ComplexMatrix d(4, 4);
  d(0, 0) = std::polar(1.0, x - y + z);
  d(1, 1) = std::polar(1.0, x + y - z);
  d(2, 2) = std::polar(1.0, -x - y - z);
  d(3, 3) = std::polar(1.0, -x + y + z);
  return b * d * b.dagger();
}

/// pair_for_c0: reorder eigenphases into conjugate pairs so that z == 0
/// exactly; valid only when the spectrum is conjugation-closed.
inline KakDecomposition kak_decompose(const ComplexMatrix& u, bool pair_for_c0 = false) {
  if (u.rows() != 4 || u.cols() != 4) throw error(errc::dimension_mismatch, "kak");
  if (distance(u.dagger() * u, ComplexMatrix::identity(4)) > 1e-9)
    throw error(errc::not_unitary, "kak");
  Eigen::Matrix4cd ue = to_eigen(u);
  const cplx det = ue.determinant();
  const cplx gl = std::pow(det, 0.25);
  ComplexMatrix us = u * (1.0 / gl);
  const ComplexMatrix& b = detail::magic_basis();
  ComplexMatrix m = b.dagger() * us * b;
  ComplexMatrix mm = m.transpose() * m;
  std::array<cplx, 4> d;
  ComplexMatrix p(4, 4);
  detail::sym_unitary_diag(mm, d, p);
  std::array<double, 4> phi;
  for (int i = 0; i < 4; ++i) phi[i] = std::arg(d[i]) / 2.0;
  std::array<int, 4> order = {0, 1, 2, 3};
  if (pair_for_c0) {
    auto pair_gap = [&](int i, int j) {
      const double s = phi[i] + phi[j];
      return std::abs(s - M_PI * std::round(s / M_PI));
    };
    int j1 = 1;
    for (int j = 2; j < 4; ++j)
      if (pair_gap(0, j) < pair_gap(0, j1)) j1 = j;
    std::vector<int> rest;
    for (int j = 1; j < 4; ++j)
      if (j != j1) rest.push_back(j);
    if (pair_gap(0, j1) > 1e-7 || pair_gap(rest[0], rest[1]) > 1e-7)
      throw error(errc::convergence_failure, "eigenphase pairing");
    order = {0, rest[0], rest[1], j1};
    std::array<double, 4> phi2;
    for (int i = 0; i < 4; ++i) phi2[i] = phi[order[i]];
    phi = phi2;
    phi[3] -= M_PI * std::round((phi[0] + phi[3]) / M_PI);
    phi[2] -= M_PI * std::round((phi[1] + phi[2]) / M_PI);
  } else {
    const double tot = phi[0] + phi[1] + phi[2] + phi[3];
    const int k = static_cast<int>(std::round(tot / M_PI));
    if (k != 0) phi[0] -= k * M_PI;
  }
  ComplexMatrix pr(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) pr(i, j) = p(i, order[j]);
  Eigen::Matrix4d pd;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) pd(i, j) = pr(i, j).real();
  if (pd.determinant() < 0)
    for (int i = 0; i < 4; ++i) pr(i, 0) = -pr(i, 0);
  ComplexMatrix dinv(4, 4);
  for (int i = 0; i < 4; ++i) dinv(i, i) = std::polar(1.0, -phi[i]);
  ComplexMatrix k1 = m * pr * dinv;
  double imag_norm = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) imag_norm += k1(i, j).imag() * k1(i, j).imag();
  if (std::sqrt(imag_norm) > 1e-7) throw error(errc::convergence_failure, "kak K1 realness");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) k1(i, j) = k1(i, j).real();
  KakDecomposition out;
  out.x = (phi[0] + phi[1]) / 2.0;
  out.y = (phi[1] + phi[3]) / 2.0;
  out.z = (phi[0] + phi[3]) / 2.0;
  ComplexMatrix l1 = b * k1 * b.dagger();
  ComplexMatrix l2 = b * pr.transpose() * b.dagger();
  cplx ph1, ph2;
  detail::factor_local(l1, ph1, out.a1, out.a0);
  detail::factor_local(l2, ph2, out.b1, out.b0);
  out.phase = gl * ph1 * ph2;
  return out;
}

// ---- ZYZ Euler angles: u ∝ Rz(alpha) Ry(beta) Rz(gamma) ----
namespace detail {

inline std::array<double, 3> zyz_angles(const ComplexMatrix& u) {
  const cplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  ComplexMatrix v = u * (1.0 / std::sqrt(det));
  for (int attempt = 0; attempt < 2; ++attempt) {
    const double beta = 2.0 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
    double alpha, gamma;
    if (std::abs(v(0, 0)) > 1e-9 && std::abs(v(1, 0)) > 1e-9) {
      const double apg = 2.0 * std::arg(v(1, 1));
      const double amg = 2.0 * std::arg(v(1, 0));
      alpha = (apg + amg) / 2.0;
      gamma = (apg - amg) / 2.0;
    } else if (std::abs(v(0, 0)) > 1e-9) {
      alpha = 2.0 * std::arg(v(1, 1));
      gamma = 0.0;
    } else {
      alpha = 2.0 * std::arg(v(1, 0));
      gamma = 0.0;
    }
    ComplexMatrix rec = rot_z(alpha) * rot_y(beta) * rot_z(gamma);
    if (distance(rec, v) < 1e-8) return {alpha, beta, gamma};
    v *= -1.0;  // other det-sqrt branch
  }
  throw error(errc::convergence_failure, "zyz");
}

inline void emit_1q(std::vector<Gate>& out, const ComplexMatrix& u, int q) {
  const auto ang = zyz_angles(u);
  // matrix order Rz(a) Ry(b) Rz(g): time order g, b, a
  out.push_back(Gate::rz(q, ang[2]));
  out.push_back(Gate::ry(q, ang[1]));
  out.push_back(Gate::rz(q, ang[0]));
}

inline void emit_cz(std::vector<Gate>& out, int qa, int qb) {
  out.push_back(Gate::h(qb));
  out.push_back(Gate::cnot(qa, qb));
  out.push_back(Gate::h(qb));
}

/// exp(i s pi/4 ZZ) on (qa,qb); one entangler.
inline void emit_quarter_zz(std::vector<Gate>& out, int sign, int qa, int qb) {
  if (sign < 0) {
    emit_cz(out, qa, qb);
    out.push_back(Gate::rz(qa, M_PI / 2));
    out.push_back(Gate::rz(qb, M_PI / 2));
  } else {
    out.push_back(Gate::rz(qa, -M_PI / 2));
    out.push_back(Gate::rz(qb, -M_PI / 2));
    emit_cz(out, qa, qb);
  }
}

/// W(x,0,z) = CX (Rx(-2x) ⊗ Rz(-2z)) CX; two entanglers.
inline void emit_w_xz(std::vector<Gate>& out, double x, double z, int qa, int qb) {
  out.push_back(Gate::cnot(qa, qb));
  out.push_back(Gate::rx(qa, -2.0 * x));
  out.push_back(Gate::rz(qb, -2.0 * z));
  out.push_back(Gate::cnot(qa, qb));
}

/// W(x,y,z) generic; three entanglers:
/// W = CX (Rx(-2x)⊗Rz(-2z)) CZ Rx(2y) (S⊗S) CX (S^dag on qb)
inline void emit_w_general(std::vector<Gate>& out, double x, double y, double z, int qa,
                           int qb) {
  out.push_back(Gate::rz(qb, -M_PI / 2));
  out.push_back(Gate::cnot(qa, qb));
  out.push_back(Gate::rz(qa, M_PI / 2));
  out.push_back(Gate::rz(qb, M_PI / 2));
  out.push_back(Gate::rx(qa, 2.0 * y));
  emit_cz(out, qa, qb);
  out.push_back(Gate::rx(qa, -2.0 * x));
  out.push_back(Gate::rz(qb, -2.0 * z));
  out.push_back(Gate::cnot(qa, qb));
}

/// Canonical gate with coordinates reduced to [-pi/4, pi/4]; entangler count
/// chosen by which coordinates vanish (0, 1, or 2 when possible, else 3).
inline void emit_canonical(std::vector<Gate>& out, double x, double y, double z, int qa,
                           int qb) {
  const double tol = 1e-8;
  const bool zx = std::abs(x) < tol, zy = std::abs(y) < tol, zz0 = std::abs(z) < tol;
  const int nz = (!zx) + (!zy) + (!zz0);
  if (nz == 0) return;
  if (nz == 1) {
    // single axis: quarter-turn gives one entangler, generic two
    const int axis = !zx ? 0 : (!zy ? 1 : 2);
    const double r = axis == 0 ? x : (axis == 1 ? y : z);
    if (std::abs(std::abs(r) - M_PI / 4) < tol) {
      const int sign = r > 0 ? 1 : -1;
      if (axis == 2) {
        emit_quarter_zz(out, sign, qa, qb);
      } else if (axis == 0) {
        out.push_back(Gate::h(qa));
        out.push_back(Gate::h(qb));
        emit_quarter_zz(out, sign, qa, qb);
        out.push_back(Gate::h(qa));
        out.push_back(Gate::h(qb));
      } else {
        out.push_back(Gate::rx(qa, M_PI / 2));
        out.push_back(Gate::rx(qb, M_PI / 2));
        emit_quarter_zz(out, sign, qa, qb);
        out.push_back(Gate::rx(qa, -M_PI / 2));
        out.push_back(Gate::rx(qb, -M_PI / 2));
      }
      return;
    }
  }
  if (zy) {
    emit_w_xz(out, x, z, qa, qb);
    return;
  }
  if (zz0) {
    // W(x,y,0) = (Vc^dag ⊗ Vc^dag) W(x,0,y) (Vc ⊗ Vc), Vc = Rx(pi/2)
    out.push_back(Gate::rx(qa, M_PI / 2));
    out.push_back(Gate::rx(qb, M_PI / 2));
    emit_w_xz(out, x, y, qa, qb);
    out.push_back(Gate::rx(qa, -M_PI / 2));
    out.push_back(Gate::rx(qb, -M_PI / 2));
    return;
  }
  if (zx) {
    // W(0,y,z) = (S⊗S) W(y,0,z) (S^dag⊗S^dag)
    out.push_back(Gate::rz(qa, -M_PI / 2));
    out.push_back(Gate::rz(qb, -M_PI / 2));
    emit_w_xz(out, y, z, qa, qb);
    out.push_back(Gate::rz(qa, M_PI / 2));
    out.push_back(Gate::rz(qb, M_PI / 2));
    return;
  }
  emit_w_general(out, x, y, z, qa, qb);
}

}  // namespace detail

/// Gate list for a 4x4 unitary acting on qubits (qa, qb) of a wider register;
/// qa is the more significant factor of the 4x4 matrix. At most 3 CNOTs.
inline std::vector<Gate> su4_gates(const ComplexMatrix& u, int qa, int qb) {
  KakDecomposition k = kak_decompose(u);
  const double half_pi = M_PI / 2.0;
  double r[3], shift[3];
  const double raw[3] = {k.x, k.y, k.z};
  for (int i = 0; i < 3; ++i) {
    const double n = std::round(raw[i] / half_pi);
    r[i] = raw[i] - n * half_pi;
    shift[i] = n * half_pi;
  }
  std::vector<Gate> out;
  // fold the pi/2-multiple part (a local Pauli pair) into the B-side locals
  ComplexMatrix ls = canonical_gate(shift[0], shift[1], shift[2]);
  cplx ph;
  ComplexMatrix s1(2, 2), s0(2, 2);
  detail::factor_local(ls, ph, s1, s0);
  const ComplexMatrix b1 = s1 * k.b1;
  const ComplexMatrix b0 = s0 * k.b0;
  detail::emit_1q(out, b1, qa);
  detail::emit_1q(out, b0, qb);
  detail::emit_canonical(out, r[0], r[1], r[2], qa, qb);
  detail::emit_1q(out, k.a1, qa);
  detail::emit_1q(out, k.a0, qb);
  return out;
}

/// SU(4) synthesis as a two-qubit GateSequence (<= 3 CNOTs, reconstruction
/// up to global phase).
inline GateSequence decompose_su4(const ComplexMatrix& u) {
  if (u.rows() != 4 || u.cols() != 4) throw error(errc::dimension_mismatch, "decompose_su4");
  if (distance(u.dagger() * u, ComplexMatrix::identity(4)) > 1e-9)
    throw error(errc::not_unitary, "decompose_su4");
  GateSequence gs;
  gs.width = 2;
  gs.gates = su4_gates(u, 0, 1);
  gs = merge_adjacent_rotations(gs);
  return gs;
}

}  // namespace petz
