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

#include "petz/bloch.hpp"
#include "petz/channel.hpp"
#include "petz/linalg.hpp"

namespace petz {

/// Transpose-channel recovery map for (channel, reference state).
///
/// Kraus operators K_m = sqrt(gamma) E_m^dag (E(gamma))^{-1/2}. When
/// E(gamma) is singular the inverse square root is a pseudo-inverse and
/// sum K^dag K equals the support projector of E(gamma); the map is then
/// completed on the orthocomplement by "measure and replace with gamma",
/// i.e. extra Kraus operators sqrt(lam_j)|v_j><u_i| over the eigenbasis
/// of gamma and an orthonormal basis of the kernel.
struct PetzMap {
  std::vector<ComplexMatrix> kraus;        // transpose-channel part
  std::vector<ComplexMatrix> completion;   // empty when E(gamma) is full rank
  KrausChannel source;
  BlochState gamma;
  ComplexMatrix support;                   // support projector of E(gamma)
  int support_rank = 0;

  bool completed() const { return !completion.empty(); }

  /// All Kraus operators (transpose part + completion).
  std::vector<ComplexMatrix> all_kraus() const {
    std::vector<ComplexMatrix> out = kraus;
    out.insert(out.end(), completion.begin(), completion.end());
    return out;
  }

  KrausChannel as_channel() const {
    KrausChannel ch;
    ch.kind = ChannelKind::Custom;
    ch.kraus = all_kraus();
    return ch;
  }

  ComplexMatrix apply(const ComplexMatrix& rho) const {
    ComplexMatrix out(rho.rows(), rho.cols());
    for (const auto& k : kraus) out += k * rho * k.dagger();
    for (const auto& k : completion) out += k * rho * k.dagger();
    return out;
  }
};

inline PetzMap build_petz(const KrausChannel& ch, const BlochState& gamma) {
  PetzMap pm;
  pm.source = ch;
  pm.gamma = gamma;
  const ComplexMatrix g = bloch_to_density(gamma);
  const ComplexMatrix sqrt_g = psd_sqrt(g);
  ComplexMatrix eg = apply(ch, g);
  eg = (eg + eg.dagger()) * 0.5;
  const ComplexMatrix inv_sqrt = psd_pinv_sqrt(eg);
  pm.support = support_projector(eg);
  pm.support_rank = support_rank(eg);
  for (const auto& e : ch.kraus) pm.kraus.push_back(sqrt_g * e.dagger() * inv_sqrt);
  const int d = ch.dim();
  if (pm.support_rank < d) {
    // orthonormal kernel basis from I - P
    ComplexMatrix ker = ComplexMatrix::identity(d) - pm.support;
    SpectralDecomposition ks = herm_eig((ker + ker.dagger()) * 0.5);
    std::vector<std::vector<cplx>> kernel_vecs;
    for (int k = 0; k < d; ++k) {
      if (ks.eigenvalues[k] > 0.5) {
        std::vector<cplx> v(d);
        for (int i = 0; i < d; ++i) v[i] = ks.eigenvectors(i, k);
        kernel_vecs.push_back(v);
      }
    }
    SpectralDecomposition gs = herm_eig(g);
    for (const auto& u : kernel_vecs) {
      for (int j = 0; j < d; ++j) {
        const double lam = std::max(gs.eigenvalues[j], 0.0);
        if (lam < 1e-15) continue;
        ComplexMatrix k(d, d);
        for (int i = 0; i < d; ++i)
          for (int c = 0; c < d; ++c)
            k(i, c) = std::sqrt(lam) * gs.eigenvectors(i, j) * std::conj(u[c]);
        pm.completion.push_back(k);
      }
    }
  }
  return pm;
}

/// Recovery error deltaF = 1 - F(rho, Petz_gamma(E(rho))) for the reference
/// gamma displaced from rho by the given Bloch-parameter mismatch.
inline double recovery_error_deltaF(const BlochState& rho0,
                                    double d_r, double d_theta, double d_phi,
                                    const KrausChannel& ch) {
  BlochState gamma{rho0.r + d_r, rho0.theta + d_theta, rho0.phi + d_phi};
  if (gamma.r < -1e-12 || gamma.r > 1.0 + 1e-12)
    throw error(errc::reference_out_of_ball, "R0 + dR");
  gamma.r = std::clamp(gamma.r, 0.0, 1.0);
  const PetzMap pm = build_petz(ch, gamma);
  const ComplexMatrix rho = bloch_to_density(rho0);
  ComplexMatrix rec = pm.apply(apply(ch, rho));
  rec = (rec + rec.dagger()) * 0.5;
  const double f = uhlmann_fidelity(rho, rec);
  return std::clamp(1.0 - f, 0.0, 1.0);
}

/// |D(E(rho)|E(gamma)) - D(rho|gamma)|; +inf propagates from either side.
inline double perfect_recovery_residual(const BlochState& rho_s, const BlochState& gamma_s,
                                        const KrausChannel& ch) {
  const ComplexMatrix rho = bloch_to_density(rho_s);
  const ComplexMatrix gam = bloch_to_density(gamma_s);
  const double before = relative_entropy(rho, gam);
  ComplexMatrix er = apply(ch, rho);
  ComplexMatrix eg = apply(ch, gam);
  er = (er + er.dagger()) * 0.5;
  eg = (eg + eg.dagger()) * 0.5;
  const double after = relative_entropy(er, eg);
  if (std::isinf(before) || std::isinf(after))
    return std::numeric_limits<double>::infinity();
  return std::abs(after - before);
}

}  // namespace petz
