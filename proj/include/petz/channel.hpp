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
#include <string>
#include <vector>

#include "petz/linalg.hpp"
#include "petz/matrix.hpp"

namespace petz {

enum class ChannelKind { Dephasing, AmplitudeDamping, Depolarizing, Erasure, Custom };

inline const char* kind_name(ChannelKind k) {
  switch (k) {
    case ChannelKind::Dephasing: return "dephasing";
    case ChannelKind::AmplitudeDamping: return "amplitude_damping";
    case ChannelKind::Depolarizing: return "depolarizing";
    case ChannelKind::Erasure: return "erasure";
    case ChannelKind::Custom: return "custom";
  }
  return "custom";
}

inline ChannelKind kind_from_name(const std::string& s) {
  if (s == "dephasing") return ChannelKind::Dephasing;
  if (s == "amplitude_damping" || s == "amplitude-damping" || s == "ad")
    return ChannelKind::AmplitudeDamping;
  if (s == "depolarizing") return ChannelKind::Depolarizing;
  if (s == "erasure") return ChannelKind::Erasure;
  if (s == "custom") return ChannelKind::Custom;
  throw error(errc::bad_config, "unknown channel kind: " + s);
}

/// CPTP map in Kraus form. Operator order is part of the channel identity:
/// the dilation stacks the operators in listed order.
struct KrausChannel {
  std::vector<ComplexMatrix> kraus;
  ChannelKind kind = ChannelKind::Custom;
  double p = 0.0;              // degree of decoherence; meaningless for Custom
  std::vector<int> padding;    // indices of deliberate zero operators

  int rank() const { return static_cast<int>(kraus.size()); }
  int dim() const { return kraus.empty() ? 0 : kraus.front().rows(); }
};

struct ValidationReport {
  double tp_residual = 0.0;
  double min_choi_eig = 0.0;
  bool pass() const { return tp_residual <= 1e-10 && min_choi_eig >= -1e-10; }
};

inline ComplexMatrix kraus_sum(const KrausChannel& ch) {
  const int d = ch.dim();
  ComplexMatrix s(d, d);
  for (const auto& k : ch.kraus) s += k.dagger() * k;
  return s;
}

/// Choi matrix sum_m (I ⊗ E_m) |Omega><Omega| (I ⊗ E_m^dag), unnormalized.
inline ComplexMatrix choi_matrix(const KrausChannel& ch) {
  const int d = ch.dim();
  ComplexMatrix c(d * d, d * d);
  for (const auto& k : ch.kraus)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) c(i * d + a, j * d + b) += k(a, i) * std::conj(k(b, j));
  return c;
}

inline ValidationReport validate(const KrausChannel& ch) {
  ValidationReport r;
  const int d = ch.dim();
  r.tp_residual = distance(kraus_sum(ch), ComplexMatrix::identity(d));
  ComplexMatrix choi = choi_matrix(ch);
  choi = (choi + choi.dagger()) * 0.5;
  SpectralDecomposition s = herm_eig(choi);
  r.min_choi_eig = s.eigenvalues.back();
  return r;
}

inline ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& rho) {
  const int d = ch.dim();
  if (rho.rows() != d || rho.cols() != d) throw error(errc::dimension_mismatch, "apply");
  ComplexMatrix out(d, d);
  for (const auto& k : ch.kraus) out += k * rho * k.dagger();
  return out;
}

/// Hilbert-Schmidt adjoint E^dag(X) = sum_m E_m^dag X E_m.
inline ComplexMatrix adjoint_apply(const KrausChannel& ch, const ComplexMatrix& x) {
  const int d = ch.dim();
  if (x.rows() != d || x.cols() != d) throw error(errc::dimension_mismatch, "adjoint_apply");
  ComplexMatrix out(d, d);
  for (const auto& k : ch.kraus) out += k.dagger() * x * k;
  return out;
}

namespace detail {
inline void flag_zero_padding(KrausChannel& ch) {
  for (int m = 0; m < ch.rank(); ++m)
    if (ch.kraus[m].frobenius_norm() == 0.0) ch.padding.push_back(m);
}
}  // namespace detail

inline KrausChannel make_dephasing(double p) {
  if (p < 0.0 || p > 1.0) throw error(errc::param_out_of_range, "dephasing p");
  KrausChannel ch;
  ch.kind = ChannelKind::Dephasing;
  ch.p = p;
  ch.kraus.push_back(std::sqrt(1.0 - p / 2.0) * ComplexMatrix::identity(2));
  ch.kraus.push_back(std::sqrt(p / 2.0) * pauli_z());
  detail::flag_zero_padding(ch);
  return ch;
}

inline KrausChannel make_amplitude_damping(double p) {
  if (p < 0.0 || p > 1.0) throw error(errc::param_out_of_range, "amplitude damping p");
  KrausChannel ch;
  ch.kind = ChannelKind::AmplitudeDamping;
  ch.p = p;
  ch.kraus.push_back(ComplexMatrix(2, 2, {1, 0, 0, std::sqrt(1.0 - p)}));
  ch.kraus.push_back(ComplexMatrix(2, 2, {0, std::sqrt(p), 0, 0}));
  detail::flag_zero_padding(ch);
  return ch;
}

inline KrausChannel make_depolarizing(double p) {
  if (p < 0.0 || p > 1.0) throw error(errc::param_out_of_range, "depolarizing p");
  KrausChannel ch;
  ch.kind = ChannelKind::Depolarizing;
  ch.p = p;
  ch.kraus.push_back(std::sqrt(1.0 - p) * ComplexMatrix::identity(2));
  ch.kraus.push_back(std::sqrt(p / 3.0) * pauli_x());
  ch.kraus.push_back(std::sqrt(p / 3.0) * pauli_y());
  ch.kraus.push_back(std::sqrt(p / 3.0) * pauli_z());
  detail::flag_zero_padding(ch);
  return ch;
}

/// Erasure onto the pure state |e>: Kraus {|e><0|, |e><1|}.
inline KrausChannel make_erasure(const std::vector<cplx>& e) {
  if (e.size() != 2) throw error(errc::dimension_mismatch, "erasure target");
  const double n2 = std::norm(e[0]) + std::norm(e[1]);
  if (std::abs(n2 - 1.0) > 1e-9) throw error(errc::not_normalized, "erasure target");
  KrausChannel ch;
  ch.kind = ChannelKind::Erasure;
  ch.p = 1.0;
  for (int basis = 0; basis < 2; ++basis) {
    ComplexMatrix k(2, 2);
    k(0, basis) = e[0];
    k(1, basis) = e[1];
    ch.kraus.push_back(k);
  }
  return ch;
}

/// Channel as a superoperator matrix on column-major vec(rho):
/// vec(E rho E^dag) = (conj(E) ⊗ E) vec(rho).
inline ComplexMatrix superoperator(const KrausChannel& ch) {
  const int d = ch.dim();
  ComplexMatrix s(d * d, d * d);
  for (const auto& k : ch.kraus) s += kron(k.conjugate(), k);
  return s;
}

/// Choi matrix of an arbitrary linear map given by its action.
template <typename MapFn>
inline ComplexMatrix choi_of_map(int d, MapFn&& fn) {
  ComplexMatrix c(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ComplexMatrix eij(d, d);
      eij(i, j) = 1.0;
      ComplexMatrix out = fn(eij);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) c(i * d + a, j * d + b) += out(a, b);
    }
  return c;
}

/// 1 - average gate fidelity between two CPTP maps, via the Uhlmann fidelity
/// of their normalized Choi states and F_avg = (d F_pro + 1) / (d + 1).
template <typename MapA, typename MapB>
inline double avg_gate_fidelity_error(int d, MapA&& a, MapB&& b) {
  ComplexMatrix ca = choi_of_map(d, a) * (1.0 / d);
  ComplexMatrix cb = choi_of_map(d, b) * (1.0 / d);
  ca = (ca + ca.dagger()) * 0.5;
  cb = (cb + cb.dagger()) * 0.5;
  const double f_pro = uhlmann_fidelity(ca, cb);
  const double f_avg = (d * f_pro + 1.0) / (d + 1.0);
  return 1.0 - f_avg;
}

inline ComplexMatrix vec_col(const ComplexMatrix& m) {
  ComplexMatrix v(m.rows() * m.cols(), 1);
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) v(j * m.rows() + i, 0) = m(i, j);
  return v;
}

inline ComplexMatrix unvec_col(const ComplexMatrix& v, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = v(j * rows + i, 0);
  return m;
}

}  // namespace petz
