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

#include <catch2/catch_amalgamated.hpp>

#include "petz/dilation.hpp"
#include "petz/ion_noise.hpp"
#include "petz/qsd.hpp"
#include "petz/su4.hpp"
#include "testutil.hpp"

using namespace petz;
using test::random_bloch;
using test::random_state;

namespace {

GateSequence gpg_circuit_for(const KrausChannel& ch, const BlochState& g) {
  const PetzMap pm = build_petz(ch, g);
  const DilationUnitary d = dilate_general(pm);
  GateSequence cnots = d.total_dim() == 4 ? decompose_su4(d.u) : decompose_3q(d.u);
  return rewrite_cnot_to_gpg(cnots);
}

double superop_distance(const SuperOp& a, const SuperOp& b) { return distance(a.s, b.s); }

}  // namespace

TEST_CASE("trajectory closed forms") {
  SECTION("loop closure at t = 2 pi / delta") {
    TrapParams tp{2 * M_PI * 1e3, 2 * M_PI * 20e3, 0.0, 0.0};
    tp.t = 2 * M_PI / tp.delta;
    Trajectory tr = trajectory(tp);
    CHECK(std::abs(tr.alpha) <= 1e-12 * (tp.g / tp.delta));
    CHECK(tr.phi == Catch::Approx(2 * M_PI * tp.g * tp.g / (tp.delta * tp.delta)).epsilon(1e-12));
  }
  SECTION("multi-loop closure") {
    TrapParams tp{500.0, 4000.0, 0.0, 0.0};
    for (int L = 1; L <= 5; ++L) {
      tp.t = 2 * M_PI * L / tp.delta;
      CHECK(std::abs(trajectory(tp).alpha) <= 1e-12 * (tp.g / tp.delta));
    }
  }
  SECTION("quadrature oracle for the enclosed-area phase") {
    TrapParams tp{1.3, 7.1, 0.0, 2.4};
    const int n = 20000;
    const double h = tp.t / n;
    double acc = 0;
    auto integrand = [&](double t) {
      const cplx a = tp.g * std::polar(1.0, tp.delta * t);
      const cplx alpha = cplx(0, -1) * (tp.g / tp.delta) * (std::polar(1.0, tp.delta * t) - 1.0);
      return (a * std::conj(alpha)).imag();
    };
    for (int k = 0; k < n; k += 2)
      acc += h / 3.0 * (integrand(k * h) + 4 * integrand((k + 1) * h) + integrand((k + 2) * h));
    CHECK(trajectory(tp).phi == Catch::Approx(acc).margin(1e-8));
  }
  SECTION("zero detuning rejected") { CHECK_THROWS_AS(trajectory({1.0, 0.0, 0.0, 1.0}), error); }
  SECTION("gate error is the squared coupling offset ratio") {
    CHECK(gate_error({1.0, 200.0, 2.0, 0.0}) == Catch::Approx(1e-4));
  }
}

TEST_CASE("eph channel") {
  SECTION("trace preservation is exact for 100 error values") {
    for (int k = 0; k < 100; ++k) {
      const double delta = std::pow(10.0, -8.0 + 8.0 * k / 99.0);
      const KrausChannel ch = eph_channel(delta, 0, 1, 2);
      CHECK(distance(kraus_sum(ch), ComplexMatrix::identity(4)) <= 1e-14);
    }
  }
  SECTION("zero error is the identity channel with an explicit zero branch") {
    const KrausChannel ch = eph_channel(0.0, 0, 1, 2);
    CHECK(distance(ch.kraus[0], ComplexMatrix::identity(4)) < 1e-15);
    CHECK(ch.kraus[1].frobenius_norm() < 1e-15);
  }
  SECTION("CZ branch weight at 0.01") {
    const double delta = 0.01;
    const KrausChannel ch = eph_channel(delta, 0, 1, 2);
    const double want = std::exp(-delta / 2) * std::sqrt(std::sinh(delta));
    CHECK(std::abs(ch.kraus[1](0, 0)) == Catch::Approx(want));
  }
  SECTION("coherence |00><11| decays by exactly e^{-2 Delta}") {
    for (double delta : {1e-4, 1e-3, 1e-2, 0.1}) {
      const KrausChannel ch = eph_channel(delta, 0, 1, 2);
      ComplexMatrix coh(4, 4);
      coh(0, 3) = 1.0;
      ComplexMatrix out = apply(ch, coh);
      CHECK(out(0, 3).real() == Catch::Approx(std::exp(-2 * delta)).epsilon(1e-12));
      ComplexMatrix mid(4, 4);
      mid(1, 2) = 1.0;
      CHECK(distance(apply(ch, mid), mid) <= 1e-14);
    }
  }
  SECTION("negative error rejected") { CHECK_THROWS_AS(eph_channel(-0.1, 0, 1, 2), error); }
}

TEST_CASE("gpg noise channel") {
  SECTION("zero error reduces to the ideal gate") {
    const double phi = 1.234;
    SuperOp got = gpg_noise_channel(0.0, phi, 0, 1, 2);
    SuperOp want = SuperOp::from_unitary(gate_matrix(Gate::gpg(0, 1, phi), 2));
    CHECK(superop_distance(got, want) <= 1e-12);
  }
  SECTION("purity drops on |++> for positive error") {
    ComplexMatrix plus2(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) plus2(i, j) = 0.25;
    SuperOp noisy = gpg_noise_channel(0.05, M_PI / 2, 0, 1, 2);
    ComplexMatrix out = noisy.apply(plus2);
    CHECK((out * out).trace().real() < 1.0 - 1e-4);
  }
  SECTION("systematic part alone stays unitary") {
    const double delta = 0.05, phi = M_PI / 2;
    ComplexMatrix u = gate_matrix(Gate::gpg(0, 1, phi + delta), 2);
    SuperOp sys = SuperOp::from_unitary(gate_matrix(Gate::gpg(0, 1, delta), 2))
                      .after(SuperOp::from_unitary(gate_matrix(Gate::gpg(0, 1, phi), 2)));
    CHECK(superop_distance(sys, SuperOp::from_unitary(u)) <= 1e-12);
  }
}

TEST_CASE("residual generators") {
  SECTION("single GPG with no later gates") {
    GateSequence gs;
    gs.width = 2;
    gs.gates = {Gate::gpg(0, 1, M_PI / 2)};
    GeneratorSet set = residual_generators(gs, 1e-3);
    REQUIRE(set.generators.size() == 1);
    ComplexMatrix jz = 0.5 * (embed_single(pauli_z(), 0, 2) + embed_single(pauli_z(), 1, 2));
    CHECK(distance(set.generators[0], jz) <= 1e-12);
    auto s = herm_eig(set.generators[0]);
    CHECK(s.eigenvalues[0] == Catch::Approx(1.0));
    CHECK(s.eigenvalues[3] == Catch::Approx(-1.0));
  }
  SECTION("GPG followed by X⊗X flips the generator sign") {
    GateSequence gs;
    gs.width = 2;
    gs.gates = {Gate::gpg(0, 1, M_PI / 2), Gate::rx(0, M_PI), Gate::rx(1, M_PI)};
    GeneratorSet set = residual_generators(gs, 0.0);
    ComplexMatrix jz = 0.5 * (embed_single(pauli_z(), 0, 2) + embed_single(pauli_z(), 1, 2));
    CHECK(distance(set.generators[0], cplx(-1, 0) * jz) <= 1e-12);
  }
  SECTION("spectrum preserved under conjugation for compiled circuits") {
    std::mt19937_64 rng(61);
    GateSequence gs = gpg_circuit_for(make_dephasing(0.5), random_bloch(rng));
    GeneratorSet set = residual_generators(gs, 1e-3);
    CHECK(set.generators.size() == 3);
    for (const auto& g : set.generators) {
      auto s = herm_eig(g);
      CHECK(s.eigenvalues[0] == Catch::Approx(1.0).margin(1e-9));
      CHECK(s.eigenvalues[1] == Catch::Approx(0.0).margin(1e-9));
      CHECK(s.eigenvalues[2] == Catch::Approx(0.0).margin(1e-9));
      CHECK(s.eigenvalues[3] == Catch::Approx(-1.0).margin(1e-9));
    }
  }
  SECTION("width-3 spectra pad with identity degeneracy") {
    std::mt19937_64 rng(62);
    GateSequence gs = gpg_circuit_for(make_depolarizing(0.5), random_bloch(rng));
    GeneratorSet set = residual_generators(gs, 1e-3);
    REQUIRE(!set.generators.empty());
    for (const auto& g : set.generators) {
      auto s = herm_eig(g);
      CHECK(s.eigenvalues[0] == Catch::Approx(1.0).margin(1e-9));
      CHECK(s.eigenvalues[1] == Catch::Approx(1.0).margin(1e-9));
      CHECK(s.eigenvalues[6] == Catch::Approx(-1.0).margin(1e-9));
      CHECK(s.eigenvalues[7] == Catch::Approx(-1.0).margin(1e-9));
    }
  }
  SECTION("entanglers other than GPG are rejected") {
    GateSequence gs;
    gs.width = 2;
    gs.gates = {Gate::cnot(0, 1)};
    CHECK_THROWS_AS(residual_generators(gs, 1e-3), error);
  }
}

TEST_CASE("residual motion channel") {
  std::mt19937_64 rng(67);
  SECTION("zero error is the identity") {
    GateSequence gs = gpg_circuit_for(make_dephasing(0.5), random_bloch(rng));
    GeneratorSet set = residual_generators(gs, 0.0);
    CHECK(superop_distance(residual_motion_channel(set, 0.0, RmMode::combined),
                           SuperOp::identity(4)) <= 1e-12);
  }
  SECTION("single generator: combined equals exact product") {
    GateSequence gs;
    gs.width = 2;
    gs.gates = {Gate::rz(0, 0.3), Gate::gpg(0, 1, M_PI / 2), Gate::ry(1, -0.7)};
    GeneratorSet set = residual_generators(gs, 1e-3);
    REQUIRE(set.generators.size() == 1);
    CHECK(superop_distance(residual_motion_channel(set, 1e-3, RmMode::combined),
                           residual_motion_channel(set, 1e-3, RmMode::exact_product)) <= 1e-13);
  }
  SECTION("single J_z generator agrees with the eph channel where defined") {
    // The two-Kraus cosh/sinh form and the collective-J_z dephaser share the
    // populations and the parity-extremal |00><11| coherence exactly; the
    // mixed-parity coherences differ (the two-Kraus form holds them fixed,
    // the displacement picture damps them by e^{-Delta/2}).
    GateSequence gs;
    gs.width = 2;
    gs.gates = {Gate::gpg(0, 1, M_PI / 2)};
    const double delta = 1e-3;
    GeneratorSet set = residual_generators(gs, delta);
    SuperOp combined = residual_motion_channel(set, delta, RmMode::combined);
    SuperOp eph = SuperOp::from_kraus(eph_channel(delta, 0, 1, 2).kraus, 4);
    ComplexMatrix coh(4, 4);
    coh(0, 3) = 1.0;
    CHECK(distance(combined.apply(coh), eph.apply(coh)) <= 1e-12);
    for (int i = 0; i < 4; ++i) {
      ComplexMatrix pop(4, 4);
      pop(i, i) = 1.0;
      CHECK(distance(combined.apply(pop), eph.apply(pop)) <= 1e-12);
    }
    ComplexMatrix mixed(4, 4);
    mixed(0, 1) = 1.0;
    CHECK(std::abs(combined.apply(mixed)(0, 1).real() - std::exp(-delta / 2)) <= 1e-12);
  }
  SECTION("both modes are trace preserving and positivity preserving") {
    GateSequence gs = gpg_circuit_for(make_amplitude_damping(0.6), random_bloch(rng));
    GeneratorSet set = residual_generators(gs, 1e-2);
    for (RmMode mode : {RmMode::combined, RmMode::exact_product}) {
      SuperOp s = residual_motion_channel(set, 1e-2, mode);
      for (int t = 0; t < 20; ++t) {
        ComplexMatrix rho = random_state(4, rng);
        ComplexMatrix out = s.apply(rho);
        CHECK(std::abs(out.trace() - cplx(1, 0)) <= 1e-10);
        auto es = herm_eig((out + out.dagger()) * 0.5);
        CHECK(es.eigenvalues.back() >= -1e-10);
      }
    }
  }
  SECTION("combined vs exact product: squared gap scales as Delta^2") {
    // The displacement-merge correction is first order in the norm (the
    // commutator factor carries sqrt(Delta)^2 amplitudes); the squared
    // superoperator distance, the functional behind the fitted scaling
    // observation, is quadratic with a stable constant.
    GateSequence gs = gpg_circuit_for(make_dephasing(0.5), {0.5, M_PI / 2, M_PI / 4});
    auto gap2 = [&](double delta) {
      GeneratorSet set = residual_generators(gs, delta);
      const double d = superop_distance(residual_motion_channel(set, delta, RmMode::combined),
                                        residual_motion_channel(set, delta, RmMode::exact_product));
      return d * d;
    };
    const double g3 = gap2(1e-3);
    const double g4 = gap2(1e-4);
    CHECK(g3 / g4 == Catch::Approx(100.0).epsilon(0.25));
    CHECK(g3 / 1e-6 == Catch::Approx(g4 / 1e-8).epsilon(0.25));  // constant C in C*Delta^2
  }
}

TEST_CASE("fock oracle") {
  SECTION("coherence factor reproduces the coherent-state overlap") {
    GateSequence gs;
    gs.width = 2;
    gs.gates = {Gate::gpg(0, 1, M_PI / 2)};
    const double delta = 0.01;
    GeneratorSet set = residual_generators(gs, delta);
    SuperOp oracle = fock_oracle_channel(set, delta, 32);
    ComplexMatrix coh(4, 4);
    coh(0, 3) = 1.0;
    ComplexMatrix out = oracle.apply(coh);
    CHECK(out(0, 3).real() == Catch::Approx(std::exp(-2 * delta)).epsilon(1e-10));
  }
  SECTION("zero error is the identity") {
    GateSequence gs;
    gs.width = 2;
    gs.gates = {Gate::gpg(0, 1, M_PI / 2)};
    GeneratorSet set = residual_generators(gs, 0.0);
    CHECK(superop_distance(fock_oracle_channel(set, 0.0, 32), SuperOp::identity(4)) <= 1e-12);
  }
  SECTION("matches the combined closed form across circuits and errors") {
    std::mt19937_64 rng(71);
    for (const auto& ch :
         {make_dephasing(0.5), make_amplitude_damping(0.5), make_depolarizing(0.5)}) {
      GateSequence gs = gpg_circuit_for(ch, random_bloch(rng));
      for (double delta : {1e-4, 1e-3, 1e-2}) {
        GeneratorSet set = residual_generators(gs, delta);
        CHECK(superop_distance(residual_motion_channel(set, delta, RmMode::combined),
                               fock_oracle_channel(set, delta, 32)) <= 1e-8);
      }
    }
  }
  SECTION("cutoff guard") {
    GateSequence gs;
    gs.width = 2;
    gs.gates = {Gate::gpg(0, 1, M_PI / 2)};
    GeneratorSet set = residual_generators(gs, 1e-3);
    CHECK_THROWS_AS(fock_oracle_channel(set, 1e-3, 4), error);
    try {
      fock_oracle_channel(set, 1e-3, 4);
    } catch (const error& e) {
      CHECK(e.code() == errc::cutoff_too_small);
    }
  }
}

TEST_CASE("noisy petz recovery") {
  std::mt19937_64 rng(73);
  SECTION("zero error reproduces the dilation") {
    for (int t = 0; t < 20; ++t) {
      const BlochState g = random_bloch(rng);
      const KrausChannel ch = (t % 2) ? make_dephasing(0.5) : make_amplitude_damping(0.4);
      const PetzMap pm = build_petz(ch, g);
      const DilationUnitary d = dilate_general(pm);
      GateSequence gs = rewrite_cnot_to_gpg(decompose_su4(d.u));
      ComplexMatrix rho = random_state(2, rng);
      CHECK(distance(noisy_petz_apply(pm, gs, 0.0, rho), apply_dilation(d, rho)) <= 1e-9);
    }
  }
  SECTION("outputs stay physical across the error range") {
    const BlochState g = random_bloch(rng);
    const PetzMap pm = build_petz(make_dephasing(0.5), g);
    GateSequence gs = rewrite_cnot_to_gpg(decompose_su4(dilate_general(pm).u));
    for (double delta : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
      ComplexMatrix rho = random_state(2, rng);
      ComplexMatrix out = noisy_petz_apply(pm, gs, delta, rho);
      CHECK(std::abs(out.trace() - cplx(1, 0)) <= 1e-9);
      auto s = herm_eig(out);
      CHECK(s.eigenvalues.back() >= -1e-9);
    }
  }
  SECTION("epsilon vanishes at zero error and grows monotonically") {
    const BlochState g = random_bloch(rng);
    const PetzMap pm = build_petz(make_amplitude_damping(0.5), g);
    GateSequence gs = rewrite_cnot_to_gpg(decompose_su4(dilate_general(pm).u));
    ComplexMatrix rho = bloch_to_density(g);
    CHECK(recovery_error_epsilon(pm, gs, 0.0, rho) <= 1e-9);
    double prev = -1e-10;
    for (double delta : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
      const double eps = recovery_error_epsilon(pm, gs, delta, rho);
      CHECK(eps >= prev - 1e-10);
      CHECK(eps <= 1.0);
      prev = eps;
    }
    CHECK(prev > 0.0);
  }
  SECTION("epsilon tends to zero with the gate error") {
    for (const auto& ch :
         {make_dephasing(0.5), make_amplitude_damping(0.5), make_depolarizing(0.5)}) {
      const BlochState g = random_bloch(rng);
      const PetzMap pm = build_petz(ch, g);
      const GateSequence gs = gpg_circuit_for(ch, g);
      CHECK(recovery_error_epsilon(pm, gs, 1e-8, bloch_to_density(g)) <= 1e-6);
    }
  }
}
