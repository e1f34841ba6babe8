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

#include "petz/bloch.hpp"
#include "petz/petz_map.hpp"
#include "testutil.hpp"

using namespace petz;
using test::random_bloch;

TEST_CASE("bloch conversions") {
  SECTION("center is maximally mixed") {
    CHECK(distance(bloch_to_density({0, 0.3, 2.2}), 0.5 * ComplexMatrix::identity(2)) < 1e-14);
  }
  SECTION("north pole is |0><0|") {
    ComplexMatrix rho = bloch_to_density({1, 0, 0});
    CHECK(rho(0, 0).real() == Catch::Approx(1.0));
    CHECK(std::abs(rho(1, 1)) < 1e-14);
  }
  SECTION("south pole maps back to (1, pi, 0)") {
    ComplexMatrix rho(2, 2);
    rho(1, 1) = 1.0;
    BlochState s = density_to_bloch(rho);
    CHECK(s.r == Catch::Approx(1.0));
    CHECK(s.theta == Catch::Approx(M_PI));
    CHECK(s.phi == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("equatorial substitution example") {
    ComplexMatrix rho = bloch_to_density({0.5, M_PI / 2, M_PI / 4});
    ComplexMatrix want = 0.5 * (ComplexMatrix::identity(2) +
                                (0.5 / std::sqrt(2.0)) * (pauli_x() + pauli_y()));
    CHECK(distance(rho, want) < 1e-14);
  }
  SECTION("round trip against the Pauli-coefficient oracle") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
      BlochState s = random_bloch(rng);
      ComplexMatrix rho = bloch_to_density(s);
      // oracle: r_i = Tr(rho sigma_i)
      const double rx = (rho * pauli_x()).trace().real();
      const double ry = (rho * pauli_y()).trace().real();
      const double rz = (rho * pauli_z()).trace().real();
      CHECK(std::sqrt(rx * rx + ry * ry + rz * rz) == Catch::Approx(s.r).margin(1e-12));
      BlochState back = density_to_bloch(rho);
      CHECK(distance(bloch_to_density(back), rho) <= 1e-10);
    }
  }
  SECTION("radius range checked") {
    CHECK_THROWS_AS(bloch_to_density({1.5, 0, 0}), error);
  }
}

TEST_CASE("build_petz closed forms") {
  SECTION("dephasing with maximally mixed reference") {
    // sqrt(gamma) and E(gamma)^{-1/2} are multiples of I, so K_m = E_m^dag
    for (double p : {0.2, 0.5, 0.9}) {
      const PetzMap pm = build_petz(make_dephasing(p), {0, 0, 0});
      REQUIRE(pm.kraus.size() == 2);
      CHECK(distance(pm.kraus[0], std::sqrt(1 - p / 2) * ComplexMatrix::identity(2)) < 1e-12);
      CHECK(distance(pm.kraus[1], std::sqrt(p / 2) * pauli_z()) < 1e-12);
      CHECK_FALSE(pm.completed());
      CHECK(pm.support_rank == 2);
    }
  }
  SECTION("erasure Petz has K_i = sqrt(gamma) |i><e| and a completion") {
    std::mt19937_64 rng(8);
    const BlochState g = random_bloch(rng);
    const ComplexMatrix gamma = bloch_to_density(g);
    const ComplexMatrix sg = psd_sqrt(gamma);
    const KrausChannel ch = make_erasure({1.0, 0.0});  // |e> = |0>
    const PetzMap pm = build_petz(ch, g);
    REQUIRE(pm.kraus.size() == 2);
    for (int i = 0; i < 2; ++i) {
      ComplexMatrix want(2, 2);
      for (int r = 0; r < 2; ++r) want(r, 0) = sg(r, i);  // sqrt(gamma)|i><0|
      CHECK(distance(pm.kraus[i], want) < 1e-10);
    }
    CHECK(pm.support_rank == 1);
    CHECK(pm.completed());
    // the completed map is trace preserving
    ComplexMatrix total(2, 2);
    for (const auto& k : pm.all_kraus()) total += k.dagger() * k;
    CHECK(distance(total, ComplexMatrix::identity(2)) <= 1e-9);
    // |e><e| recovers gamma exactly
    ComplexMatrix pe(2, 2);
    pe(0, 0) = 1.0;
    CHECK(distance(pm.apply(pe), gamma) <= 1e-9);
  }
  SECTION("trace preservation on the support projector") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
      const double p = (t % 10) / 10.0;
      const KrausChannel ch = (t % 3 == 0)   ? make_dephasing(p)
                              : (t % 3 == 1) ? make_amplitude_damping(p)
                                             : make_depolarizing(p);
      const BlochState g = random_bloch(rng);
      const PetzMap pm = build_petz(ch, g);
      ComplexMatrix sum(2, 2);
      for (const auto& k : pm.kraus) sum += k.dagger() * k;
      CHECK(distance(sum, pm.support) <= 1e-9);
      ComplexMatrix total = sum;
      for (const auto& k : pm.completion) total += k.dagger() * k;
      CHECK(distance(total, ComplexMatrix::identity(2)) <= 1e-9);
    }
  }
}

TEST_CASE("reference recovery identity") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 1000; ++t) {
    const double p = 0.999 * ((t % 100) + 1) / 100.0;
    const KrausChannel ch = (t % 3 == 0)   ? make_dephasing(p)
                            : (t % 3 == 1) ? make_amplitude_damping(p)
                                           : make_depolarizing(p);
    const BlochState g = random_bloch(rng);
    const ComplexMatrix gamma = bloch_to_density(g);
    ComplexMatrix rec = build_petz(ch, g).apply(apply(ch, gamma));
    rec = (rec + rec.dagger()) * 0.5;
    CHECK(uhlmann_fidelity(gamma, rec) >= 1.0 - 1e-9);
  }
}

TEST_CASE("recovery error deltaF") {
  SECTION("perfect prior gives zero error") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
      const BlochState rho0 = random_bloch(rng);
      const KrausChannel ch = (t % 2) ? make_dephasing(0.6) : make_amplitude_damping(0.4);
      CHECK(recovery_error_deltaF(rho0, 0, 0, 0, ch) <= 1e-9);
    }
  }
  SECTION("identity channel needs no recovery") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 50; ++t) {
      const BlochState rho0 = random_bloch(rng);
      CHECK(recovery_error_deltaF(rho0, 0, 0.4, -0.7, make_dephasing(0.0)) <= 1e-9);
    }
  }
  SECTION("erasure limit: deltaF = 1 - F(rho, gamma)") {
    // for an erasure channel the recovery output is exactly gamma
    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
      const BlochState rho0 = random_bloch(rng, /*pure=*/true);
      const double dth = 0.3, dph = -0.2;
      const KrausChannel ch = make_erasure({1.0, 0.0});
      const double df = recovery_error_deltaF(rho0, 0, dth, dph, ch);
      const BlochState gs{rho0.r, rho0.theta + dth, rho0.phi + dph};
      const double want =
          1.0 - uhlmann_fidelity(bloch_to_density(rho0), bloch_to_density(gs));
      CHECK(df == Catch::Approx(want).margin(1e-9));
    }
  }
  SECTION("reference outside the ball is an error") {
    CHECK_THROWS_AS(recovery_error_deltaF({0.9, 1.0, 1.0}, 0.2, 0, 0, make_dephasing(0.5)),
                    error);
  }
  SECTION("continuity in the mismatch") {
    std::mt19937_64 rng(14);
    const KrausChannel ch = make_amplitude_damping(0.5);
    for (int t = 0; t < 100; ++t) {
      const BlochState rho0 = random_bloch(rng);
      std::uniform_real_distribution<double> ud(-0.5, 0.5);
      const double dth = ud(rng), dph = ud(rng);
      const double f0 = recovery_error_deltaF(rho0, 0, dth, dph, ch);
      const double f1 = recovery_error_deltaF(rho0, 0, dth + 1e-6, dph, ch);
      CHECK(std::abs(f1 - f0) < 1e-4);
    }
  }
}

TEST_CASE("perfect recovery residual") {
  SECTION("gamma equal to rho") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 30; ++t) {
      const BlochState s = random_bloch(rng);
      const KrausChannel ch = make_dephasing(0.5);
      CHECK(perfect_recovery_residual(s, s, ch) <= 1e-9);
      CHECK(recovery_error_deltaF(s, 0, 0, 0, ch) <= 1e-9);
    }
  }
  SECTION("dephasing with commuting diagonal pair") {
    // z-axis states are fixed points of dephasing: both entropies unchanged
    const BlochState rho{0.7, 0.0, 0.0};
    const BlochState gam{0.3, 0.0, 0.0};
    const KrausChannel ch = make_dephasing(0.5);
    CHECK(perfect_recovery_residual(rho, gam, ch) <= 1e-9);
    CHECK(recovery_error_deltaF(rho, gam.r - rho.r, 0, 0, ch) <= 1e-9);
  }
  SECTION("broken condition has positive residual and positive deltaF") {
    const BlochState rho{1.0, M_PI / 2, 0.0};  // |+>
    const BlochState gam{0.0, 0.0, 0.0};       // I/2
    const KrausChannel ch = make_dephasing(0.5);
    CHECK(perfect_recovery_residual(rho, gam, ch) > 1e-4);
    CHECK(recovery_error_deltaF(rho, -1.0, 0, 0, ch) > 1e-6);
  }
  SECTION("equality implies recovery on a commuting family") {
    // diagonal rho, gamma and dephasing commute; residual vanishes and so
    // must the recovery error
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> ud(0.05, 0.95);
    for (int t = 0; t < 100; ++t) {
      const BlochState rho{ud(rng), 0.0, 0.0};
      const BlochState gam{ud(rng), 0.0, 0.0};
      const KrausChannel ch = make_dephasing(ud(rng));
      const double resid = perfect_recovery_residual(rho, gam, ch);
      REQUIRE(resid <= 1e-9);
      CHECK(recovery_error_deltaF(rho, gam.r - rho.r, 0, 0, ch) <= 1e-6);
    }
  }
}
