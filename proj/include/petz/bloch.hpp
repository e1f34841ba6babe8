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

#include "petz/linalg.hpp"
#include "petz/matrix.hpp"

namespace petz {

/// Qubit density matrix in Bloch parametrization (R, theta, phi).
/// Angles are used as-is in the trigonometric map; only R is range-checked.
struct BlochState {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

inline ComplexMatrix bloch_to_density(const BlochState& s) {
  if (!(s.r >= 0.0) || s.r > 1.0 + 1e-12) throw error(errc::reference_out_of_ball, "radius");
  const double x = s.r * std::sin(s.theta) * std::cos(s.phi);
  const double y = s.r * std::sin(s.theta) * std::sin(s.phi);
  const double z = s.r * std::cos(s.theta);
  ComplexMatrix rho(2, 2);
  rho(0, 0) = 0.5 * (1.0 + z);
  rho(1, 1) = 0.5 * (1.0 - z);
  rho(0, 1) = 0.5 * cplx(x, -y);
  rho(1, 0) = 0.5 * cplx(x, y);
  return rho;
}

/// Inverse map; phi is defined as 0 when the transverse component vanishes.
inline BlochState density_to_bloch(const ComplexMatrix& rho) {
  check_state(rho, "density_to_bloch");
  const double x = 2.0 * rho(1, 0).real();
  const double y = 2.0 * rho(1, 0).imag();
  const double z = (rho(0, 0) - rho(1, 1)).real();
  BlochState s;
  s.r = std::sqrt(x * x + y * y + z * z);
  if (s.r < 1e-15) return s;
  s.theta = std::acos(std::clamp(z / s.r, -1.0, 1.0));
  const double transverse = s.r * std::sin(s.theta);
  if (transverse < 1e-12) {
    s.phi = 0.0;
  } else {
    s.phi = std::atan2(y, x);
    if (s.phi < 0) s.phi += 2.0 * M_PI;
  }
  return s;
}

}  // namespace petz
