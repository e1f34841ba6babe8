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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "petz/matrix.hpp"

namespace petz {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
  ComplexMatrix m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int i = 0; i < e.rows(); ++i)
    for (int j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

/// Eigensystem of a Hermitian matrix; eigenvalues descending, eigenvectors
/// as unitary column matrix.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

inline SpectralDecomposition herm_eig(const ComplexMatrix& a) {
  if (!a.is_square()) throw error(errc::non_square, "herm_eig");
  const double nrm = a.frobenius_norm();
  if (distance(a, a.dagger()) > 1e-10 * std::max(1.0, nrm))
    throw error(errc::not_hermitian, "herm_eig input");
  Eigen::MatrixXcd e = to_eigen(a);
  e = (e + e.adjoint().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s(e);
  if (s.info() != Eigen::Success) throw error(errc::convergence_failure, "herm_eig");
  const int n = a.rows();
  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = n - 1 - k;  // Eigen sorts ascending
    out.eigenvalues[k] = s.eigenvalues()(src);
    for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = s.eigenvectors()(i, src);
  }
  return out;
}

/// Spectral function of a Hermitian PSD matrix with eigenvalue clipping.
inline ComplexMatrix psd_spectral_map(const ComplexMatrix& a, double (*f)(double, double),
                                      double cutoff_rel, const char* who) {
  SpectralDecomposition s = herm_eig(a);
  const double lmax = s.eigenvalues.empty() ? 0.0 : std::max(0.0, s.eigenvalues.front());
  const double neg_tol = 1e-12 * std::max(1.0, a.frobenius_norm());
  const int n = a.rows();
  ComplexMatrix r(n, n);
  for (int k = 0; k < n; ++k) {
    double lam = s.eigenvalues[k];
    if (lam < -neg_tol) throw error(errc::not_psd, who);
    lam = std::max(lam, 0.0);
    const double v = f(lam, cutoff_rel * lmax);
    if (v == 0.0) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r(i, j) += v * s.eigenvectors(i, k) * std::conj(s.eigenvectors(j, k));
  }
  return r;
}

inline ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  return psd_spectral_map(
      a, [](double lam, double) { return std::sqrt(lam); }, 0.0, "psd_sqrt");
}

/// Pseudo-inverse square root: eigenvalues above cutoff*lambda_max map to
/// 1/sqrt(lambda), others to zero.
inline ComplexMatrix psd_pinv_sqrt(const ComplexMatrix& a, double cutoff = 1e-12) {
  return psd_spectral_map(
      a, [](double lam, double cut) { return lam > cut ? 1.0 / std::sqrt(lam) : 0.0; }, cutoff,
      "psd_pinv_sqrt");
}

/// Support projector of a PSD matrix (eigenvalues above cutoff*lambda_max).
inline ComplexMatrix support_projector(const ComplexMatrix& a, double cutoff = 1e-12) {
  return psd_spectral_map(
      a, [](double lam, double cut) { return lam > cut ? 1.0 : 0.0; }, cutoff, "support");
}

inline int support_rank(const ComplexMatrix& a, double cutoff = 1e-12) {
  SpectralDecomposition s = herm_eig(a);
  const double lmax = s.eigenvalues.empty() ? 0.0 : std::max(0.0, s.eigenvalues.front());
  int r = 0;
  for (double lam : s.eigenvalues)
    if (lam > cutoff * lmax) ++r;
  return r;
}

struct Svd {
  ComplexMatrix u;                 // left singular vectors (columns)
  std::vector<double> singulars;   // descending, nonnegative
  ComplexMatrix v;                 // right singular vectors (columns); A = U S V^dag
};

/// SVD with a fixed phase convention: each row k of V^dag has its first
/// above-tolerance entry real-nonnegative.
inline Svd svd(const ComplexMatrix& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> s(to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Svd out;
  out.u = from_eigen(s.matrixU());
  out.v = from_eigen(s.matrixV());
  out.singulars.assign(s.singularValues().data(),
                       s.singularValues().data() + s.singularValues().size());
  const int k = static_cast<int>(out.singulars.size());
  const double tol = 1e-12 * std::max(1.0, a.max_abs());
  for (int c = 0; c < k && c < out.v.cols(); ++c) {
    cplx lead(0, 0);
    for (int j = 0; j < out.v.rows(); ++j) {
      if (std::abs(out.v(j, c)) > tol) {
        lead = std::conj(out.v(j, c));  // entry of row c of V^dag
        break;
      }
    }
    if (lead == cplx(0, 0)) continue;
    const cplx ph = lead / std::abs(lead);
    // V^dag row *= conj(ph) makes it real-nonnegative; so V col *= ph, U col *= conj(ph)... keep A.
    for (int j = 0; j < out.v.rows(); ++j) out.v(j, c) *= ph;
    for (int j = 0; j < out.u.rows(); ++j) out.u(j, c) *= ph;
  }
  return out;
}

/// Global phase convention: first above-tolerance entry of the first column
/// made real-positive.
inline ComplexMatrix phase_normalize(const ComplexMatrix& u) {
  const double tol = 1e-12 * std::max(1.0, u.max_abs());
  for (int i = 0; i < u.rows(); ++i) {
    if (std::abs(u(i, 0)) > tol) {
      const cplx ph = std::abs(u(i, 0)) / u(i, 0);
      return u * ph;
    }
  }
  return u;
}

/// Completes k orthonormal columns to a full unitary. Candidate columns are
/// canonical basis vectors in index order; candidates whose residual after
/// projection falls below 1e-10 are skipped. Input columns are preserved.
inline ComplexMatrix gram_schmidt_complete(const ComplexMatrix& iso) {
  const int n = iso.rows();
  const int k = iso.cols();
  if (k > n) throw error(errc::dimension_mismatch, "gram_schmidt_complete");
  ComplexMatrix gram = iso.dagger() * iso;
  if (distance(gram, ComplexMatrix::identity(k)) > 1e-9)
    throw error(errc::not_isometry, "input columns not orthonormal");
  ComplexMatrix u(n, n);
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < n; ++i) u(i, c) = iso(i, c);
  int filled = k;
  for (int e = 0; e < n && filled < n; ++e) {
    std::vector<cplx> v(n, cplx(0, 0));
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int c = 0; c < filled; ++c) {
        cplx ov(0, 0);
        for (int i = 0; i < n; ++i) ov += std::conj(u(i, c)) * v[i];
        for (int i = 0; i < n; ++i) v[i] -= ov * u(i, c);
      }
    }
    double nv = 0;
    for (const auto& x : v) nv += std::norm(x);
    nv = std::sqrt(nv);
    if (nv < 1e-10) continue;
    for (int i = 0; i < n; ++i) u(i, filled) = v[i] / nv;
    ++filled;
  }
  if (filled != n) throw error(errc::convergence_failure, "gram_schmidt_complete");
  return u;
}

inline void check_state(const ComplexMatrix& rho, const char* who, double tol = 1e-9) {
  if (!rho.is_square()) throw error(errc::not_state, who);
  if (std::abs(rho.trace() - cplx(1, 0)) > tol) throw error(errc::not_state, who);
  if (distance(rho, rho.dagger()) > tol * std::max(1.0, rho.frobenius_norm()))
    throw error(errc::not_state, who);
  SpectralDecomposition s = herm_eig((rho + rho.dagger()) * 0.5);
  if (s.eigenvalues.back() < -tol) throw error(errc::not_state, who);
}

/// Uhlmann fidelity F(rho0, rho1) = Tr[sqrt(sqrt(rho0) rho1 sqrt(rho0))]^2.
inline double uhlmann_fidelity(const ComplexMatrix& rho0, const ComplexMatrix& rho1) {
  check_state(rho0, "uhlmann_fidelity rho0");
  check_state(rho1, "uhlmann_fidelity rho1");
  ComplexMatrix s0 = psd_sqrt((rho0 + rho0.dagger()) * 0.5);
  ComplexMatrix inner = s0 * ((rho1 + rho1.dagger()) * 0.5) * s0;
  inner = (inner + inner.dagger()) * 0.5;
  SpectralDecomposition s = herm_eig(inner);
  double t = 0;
  for (double lam : s.eigenvalues) t += std::sqrt(std::max(lam, 0.0));
  return std::clamp(t * t, 0.0, 1.0);
}

/// Umegaki relative entropy D(rho|gamma), natural log. Returns +inf when
/// supp(rho) is not contained in supp(gamma) (cutoff relative 1e-12).
inline double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& gamma,
                               double cutoff = 1e-12) {
  check_state(rho, "relative_entropy rho");
  check_state(gamma, "relative_entropy gamma");
  SpectralDecomposition sr = herm_eig((rho + rho.dagger()) * 0.5);
  SpectralDecomposition sg = herm_eig((gamma + gamma.dagger()) * 0.5);
  const int n = rho.rows();
  const double rmax = std::max(sr.eigenvalues.front(), 0.0);
  const double gmax = std::max(sg.eigenvalues.front(), 0.0);
  double h_rho = 0;  // Tr[rho log rho]
  for (double lam : sr.eigenvalues)
    if (lam > cutoff * rmax && lam > 0) h_rho += lam * std::log(lam);
  double cross = 0;  // Tr[rho log gamma]
  for (int k = 0; k < n; ++k) {
    const double g = sg.eigenvalues[k];
    // weight = <g_k| rho |g_k>
    double w = 0;
    for (int a = 0; a < n; ++a) {
      if (sr.eigenvalues[a] <= cutoff * rmax) continue;
      cplx ov(0, 0);
      for (int i = 0; i < n; ++i) ov += std::conj(sg.eigenvectors(i, k)) * sr.eigenvectors(i, a);
      w += sr.eigenvalues[a] * std::norm(ov);
    }
    if (g > cutoff * gmax && g > 0) {
      cross += w * std::log(g);
    } else if (w > 1e-10) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return h_rho - cross;
}

}  // namespace petz
