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
#include <functional>
#include <vector>

#include "petz/channel.hpp"
#include "petz/circuit.hpp"
#include "petz/linalg.hpp"
#include "petz/matrix.hpp"
#include "petz/petz_map.hpp"

namespace petz {

/// Spin-dependent-force parameters: coupling g, detuning delta, coupling
/// offset eps_g, evolution time t (all angular units).
struct TrapParams {
  double g = 0.0;
  double delta = 0.0;
  double eps_g = 0.0;
  double t = 0.0;
};

struct Trajectory {
  cplx alpha;   // residual motional displacement amplitude
  double phi;   // accumulated spin-spin phase
};

inline Trajectory trajectory(const TrapParams& tp) {
  if (tp.delta == 0.0) throw error(errc::zero_detuning, "trajectory");
  const double r = tp.g / tp.delta;
  Trajectory out;
  out.alpha = cplx(0, -1) * r * (std::polar(1.0, tp.delta * tp.t) - 1.0);
  out.phi = r * r * (tp.delta * tp.t - std::sin(tp.delta * tp.t));
  return out;
}

/// Dimensionless two-qubit gate error Delta = (eps_g / delta)^2.
inline double gate_error(const TrapParams& tp) {
  if (tp.delta == 0.0) throw error(errc::zero_detuning, "gate_error");
  const double r = tp.eps_g / tp.delta;
  return r * r;
}

/// Channel value as a superoperator matrix on column-major vec(rho).
struct SuperOp {
  int dim = 0;
  ComplexMatrix s;

  static SuperOp identity(int d) {
    SuperOp o;
    o.dim = d;
    o.s = ComplexMatrix::identity(d * d);
    return o;
  }
  static SuperOp from_kraus(const std::vector<ComplexMatrix>& ks, int d) {
    SuperOp o;
    o.dim = d;
    o.s = ComplexMatrix(d * d, d * d);
    for (const auto& k : ks) o.s += kron(k.conjugate(), k);
    return o;
  }
  static SuperOp from_unitary(const ComplexMatrix& u) {
    SuperOp o;
    o.dim = u.rows();
    o.s = kron(u.conjugate(), u);
    return o;
  }
  static SuperOp from_function(int d, const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
    SuperOp o;
    o.dim = d;
    o.s = ComplexMatrix(d * d, d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        ComplexMatrix eij(d, d);
        eij(i, j) = 1.0;
        ComplexMatrix out = f(eij);
        for (int c = 0; c < d; ++c)
          for (int r = 0; r < d; ++r) o.s(c * d + r, j * d + i) = out(r, c);
      }
    return o;
  }

  ComplexMatrix apply(const ComplexMatrix& rho) const {
    if (rho.rows() != dim || rho.cols() != dim)
      throw error(errc::dimension_mismatch, "SuperOp::apply");
    return unvec_col(s * vec_col(rho), dim, dim);
  }

  /// this ∘ other (other applied first).
  SuperOp after(const SuperOp& other) const {
    if (dim != other.dim) throw error(errc::dimension_mismatch, "SuperOp::after");
    SuperOp o;
    o.dim = dim;
    o.s = s * other.s;
    return o;
  }
};

inline ComplexMatrix cz_matrix(int qa, int qb, int width) {
  ComplexMatrix c = ComplexMatrix::identity(4);
  c(3, 3) = -1;
  return embed_pair(c, qa, qb, width);
}

/// Residual spin-motion dephasing of one geometric phase gate:
/// E1 = e^{-Delta/2} sqrt(cosh Delta) I, E2 = e^{-Delta/2} sqrt(sinh Delta) CZ.
/// Trace preservation is exact: e^{-Delta}(cosh + sinh) = 1.
inline KrausChannel eph_channel(double delta, int qa, int qb, int width) {
  if (delta < 0) throw error(errc::negative_delta, "eph_channel");
  const int d = 1 << width;
  KrausChannel ch;
  ch.kind = ChannelKind::Custom;
  const double w = std::exp(-delta / 2.0);
  ch.kraus.push_back(w * std::sqrt(std::cosh(delta)) * ComplexMatrix::identity(d));
  ch.kraus.push_back(w * std::sqrt(std::sinh(delta)) * cz_matrix(qa, qb, width));
  if (delta == 0.0) ch.padding.push_back(1);
  return ch;
}

/// Noisy geometric phase gate E_ph ∘ U_sys(Delta) ∘ U_ZZ(Phi).
inline SuperOp gpg_noise_channel(double delta, double phi_ideal, int qa, int qb, int width) {
  if (delta < 0) throw error(errc::negative_delta, "gpg_noise_channel");
  SuperOp ideal = SuperOp::from_unitary(gate_matrix(Gate::gpg(qa, qb, phi_ideal), width));
  SuperOp sys = SuperOp::from_unitary(gate_matrix(Gate::gpg(qa, qb, delta), width));
  SuperOp ph = SuperOp::from_kraus(eph_channel(delta, qa, qb, width).kraus, 1 << width);
  return ph.after(sys.after(ideal));
}

/// One Hermitian generator per GPG gate: G_l = V_l J_z V_l^dag with
/// J_z = (Z⊗I + I⊗Z)/2 on the gate pair and V_l the product of all gates
/// strictly after gate l, systematic U_ZZ(Delta) shifts included.
struct GeneratorSet {
  int width = 0;
  std::vector<ComplexMatrix> generators;
  ComplexMatrix sum;
};

inline ComplexMatrix noisy_gate_matrix(const Gate& g, int width, double delta,
                                       double sq_offset) {
  switch (g.kind) {
    case Gate::Kind::RX:
      return embed_single(rot_x(g.angle + sq_offset), g.q0, width);
    case Gate::Kind::RY:
      return embed_single(rot_y(g.angle + sq_offset), g.q0, width);
    case Gate::Kind::RZ:
      return embed_single(rot_z(g.angle + sq_offset), g.q0, width);
    case Gate::Kind::GPG:
      return gate_matrix(Gate::gpg(g.q0, g.q1, g.angle + delta), width);
    default:
      throw error(errc::unsupported_gate, "noisy circuit expects rotations and GPG only");
  }
}

inline GeneratorSet residual_generators(const GateSequence& gs, double delta,
                                        double sq_offset = 0.0) {
  if (delta < 0) throw error(errc::negative_delta, "residual_generators");
  check_indices(gs);
  const int d = 1 << gs.width;
  GeneratorSet set;
  set.width = gs.width;
  set.sum = ComplexMatrix(d, d);
  ComplexMatrix tail = ComplexMatrix::identity(d);  // product of gates after current
  for (int l = static_cast<int>(gs.gates.size()) - 1; l >= 0; --l) {
    const Gate& g = gs.gates[l];
    if (g.kind == Gate::Kind::GPG) {
      ComplexMatrix jz =
          0.5 * (embed_single(pauli_z(), g.q0, gs.width) + embed_single(pauli_z(), g.q1, gs.width));
      ComplexMatrix gen = tail * jz * tail.dagger();
      gen = (gen + gen.dagger()) * 0.5;
      set.generators.push_back(gen);
      set.sum += gen;
    }
    tail = tail * noisy_gate_matrix(g, gs.width, delta, sq_offset);
  }
  // generators were collected in reverse time order; restore time order
  std::reverse(set.generators.begin(), set.generators.end());
  return set;
}

enum class RmMode { combined, exact_product };

namespace detail {

/// Collective dephasing in the eigenbasis of a generator:
/// element-wise factors exp(-Delta (mu_i - mu_j)^2 / 2).
inline SuperOp dephaser_for(const ComplexMatrix& gen, double delta) {
  const int d = gen.rows();
  SpectralDecomposition e = herm_eig(gen);
  const ComplexMatrix& u = e.eigenvectors;
  const ComplexMatrix ud = u.dagger();
  return SuperOp::from_function(d, [&](const ComplexMatrix& rho) {
    ComplexMatrix t = ud * rho * u;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double diff = e.eigenvalues[i] - e.eigenvalues[j];
        t(i, j) *= std::exp(-delta * diff * diff / 2.0);
      }
    return u * t * ud;
  });
}

}  // namespace detail

/// Residual-motion channel. combined: single displacement of the summed
/// generator (commutator factor dropped). exact_product: sequential
/// application of each conjugated single-gate dephaser.
inline SuperOp residual_motion_channel(const GeneratorSet& gens, double delta, RmMode mode) {
  if (delta < 0) throw error(errc::negative_delta, "residual_motion_channel");
  const int d = 1 << gens.width;
  if (gens.generators.empty() || delta == 0.0) return SuperOp::identity(d);
  if (mode == RmMode::combined) return detail::dephaser_for(gens.sum, delta);
  SuperOp total = SuperOp::identity(d);
  for (const auto& g : gens.generators) total = detail::dephaser_for(g, delta).after(total);
  return total;
}

/// Test fixture: explicit truncated-Fock displacement of the summed
/// generator, phonon traced out. Kraus K_m = sum_i <m|D(sqrt(Delta) mu_i)|0>
/// |v_i><v_i| with <m|D(b)|0> = e^{-b^2/2} b^m / sqrt(m!).
inline SuperOp fock_oracle_channel(const GeneratorSet& gens, double delta, int cutoff) {
  if (delta < 0) throw error(errc::negative_delta, "fock_oracle_channel");
  if (cutoff < 16) throw error(errc::cutoff_too_small, "cutoff below 16");
  const int d = 1 << gens.width;
  SpectralDecomposition e = herm_eig(gens.sum);
  double beta_max = 0;
  for (double mu : e.eigenvalues) beta_max = std::max(beta_max, std::abs(std::sqrt(delta) * mu));
  // Poisson(beta^2) tail mass beyond the cutoff must be negligible
  double mass = 0, term = std::exp(-beta_max * beta_max);
  for (int m = 0; m < cutoff; ++m) {
    mass += term;
    term *= beta_max * beta_max / (m + 1);
  }
  if (1.0 - mass > 1e-12) throw error(errc::cutoff_too_small, "tail mass above 1e-12");
  std::vector<ComplexMatrix> kraus;
  for (int m = 0; m < cutoff; ++m) {
    ComplexMatrix k(d, d);
    for (int i = 0; i < d; ++i) {
      const double b = std::sqrt(delta) * e.eigenvalues[i];
      double c = std::exp(-b * b / 2.0);
      for (int f = 0; f < m; ++f) c *= b / std::sqrt(static_cast<double>(f + 1));
      if (c == 0.0) continue;
      for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s)
          k(r, s) += c * e.eigenvectors(r, i) * std::conj(e.eigenvectors(s, i));
    }
    kraus.push_back(k);
  }
  return SuperOp::from_kraus(kraus, d);
}

/// Unitary of the circuit with systematic shifts applied.
inline ComplexMatrix noisy_circuit_unitary(const GateSequence& gs, double delta,
                                           double sq_offset = 0.0) {
  const int d = 1 << gs.width;
  ComplexMatrix u = ComplexMatrix::identity(d);
  for (const auto& g : gs.gates) u = noisy_gate_matrix(g, gs.width, delta, sq_offset) * u;
  return u;
}

/// Noisy Petz recovery: ancilla |0..0>, shifted circuit, residual-motion
/// dephasing, ancilla trace-out. The sequence gs must be the GPG form of the
/// map's dilation (one system qubit, least significant).
inline ComplexMatrix noisy_petz_apply(const PetzMap& pm, const GateSequence& gs, double delta,
                                      const ComplexMatrix& rho,
                                      RmMode mode = RmMode::combined, double sq_offset = 0.0) {
  (void)pm;
  if (delta < 0) throw error(errc::negative_delta, "noisy_petz_apply");
  if (rho.rows() != 2 || rho.cols() != 2)
    throw error(errc::dimension_mismatch, "noisy_petz_apply rho");
  const int d = 1 << gs.width;
  const int d_anc = d / 2;
  ComplexMatrix full(d, d);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) full(i, j) = rho(i, j);
  ComplexMatrix u = noisy_circuit_unitary(gs, delta, sq_offset);
  ComplexMatrix evolved = u * full * u.dagger();
  if (delta > 0) {
    SuperOp rm = residual_motion_channel(residual_generators(gs, delta, sq_offset), delta, mode);
    evolved = rm.apply(evolved);
  }
  ComplexMatrix out = partial_trace(evolved, d_anc, 2, Subsystem::B);
  return (out + out.dagger()) * 0.5;
}

/// epsilon(Delta) = 1 - F[ideal recovery, noisy recovery] on E(rho).
inline double recovery_error_epsilon(const PetzMap& pm, const GateSequence& gs, double delta,
                                     const ComplexMatrix& rho,
                                     RmMode mode = RmMode::combined, double sq_offset = 0.0) {
  ComplexMatrix sigma = apply(pm.source, rho);
  sigma = (sigma + sigma.dagger()) * 0.5;
  ComplexMatrix ideal = pm.apply(sigma);
  ideal = (ideal + ideal.dagger()) * 0.5;
  ComplexMatrix noisy = noisy_petz_apply(pm, gs, delta, sigma, mode, sq_offset);
  const double f = uhlmann_fidelity(ideal, noisy);
  return std::clamp(1.0 - f, 0.0, 1.0);
}

}  // namespace petz
