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

#include <random>

#include "petz/bloch.hpp"
#include "petz/linalg.hpp"
#include "petz/matrix.hpp"

namespace petz::test {

inline ComplexMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = cplx(nd(rng), nd(rng));
  return g;
}

/// Haar unitary via orthonormalization of a Ginibre ensemble with a random
/// diagonal phase.
inline ComplexMatrix haar_unitary(int n, std::mt19937_64& rng) {
  ComplexMatrix g = ginibre(n, n, rng);
  // modified Gram-Schmidt
  ComplexMatrix q(n, n);
  for (int c = 0; c < n; ++c) {
    std::vector<cplx> v(n);
    for (int i = 0; i < n; ++i) v[i] = g(i, c);
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < c; ++k) {
        cplx ov(0, 0);
        for (int i = 0; i < n; ++i) ov += std::conj(q(i, k)) * v[i];
        for (int i = 0; i < n; ++i) v[i] -= ov * q(i, k);
      }
    double nv = 0;
    for (const auto& x : v) nv += std::norm(x);
    nv = std::sqrt(nv);
    for (int i = 0; i < n; ++i) q(i, c) = v[i] / nv;
  }
  std::uniform_real_distribution<double> ud(0.0, 2 * M_PI);
  for (int c = 0; c < n; ++c) {
    const cplx ph = std::polar(1.0, ud(rng));
    for (int i = 0; i < n; ++i) q(i, c) *= ph;
  }
  return q;
}

/// Random density matrix of full rank (Hilbert-Schmidt-ish measure).
inline ComplexMatrix random_state(int n, std::mt19937_64& rng) {
  ComplexMatrix g = ginibre(n, n, rng);
  ComplexMatrix rho = g * g.dagger();
  const double tr = rho.trace().real();
  return rho * (1.0 / tr);
}

inline BlochState random_bloch(std::mt19937_64& rng, bool pure = false) {
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  BlochState s;
  s.r = pure ? 1.0 : std::cbrt(ud(rng));
  s.theta = std::acos(2.0 * ud(rng) - 1.0);
  s.phi = 2.0 * M_PI * ud(rng);
  return s;
}

inline ComplexMatrix ketbra(int n, int i, int j) {
  ComplexMatrix m(n, n);
  m(i, j) = 1.0;
  return m;
}

}  // namespace petz::test
