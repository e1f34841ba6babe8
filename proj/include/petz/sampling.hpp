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
#include <cstdint>
#include <vector>

#include "petz/bloch.hpp"

namespace petz {

/// splitmix64; one independent stream per (seed, index) so sampling is
/// deterministic regardless of worker count.
class SampleRng {
 public:
  SampleRng(uint64_t seed, uint64_t index)
      : s_(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1))) {}

  uint64_t next() {
    uint64_t z = (s_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t s_;
};

enum class SampleMode { ball, surface };

/// Direction uniform on the sphere; radius u^{1/3} (volume-uniform) in ball
/// mode, 1 in surface mode.
inline BlochState sample_bloch_one(uint64_t seed, uint64_t index, SampleMode mode) {
  SampleRng rng(seed, index);
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * M_PI * rng.uniform();
  const double r = (mode == SampleMode::ball) ? std::cbrt(rng.uniform()) : 1.0;
  BlochState s;
  s.r = r;
  s.theta = std::acos(std::clamp(z, -1.0, 1.0));
  s.phi = phi;
  return s;
}

inline std::vector<BlochState> sample_bloch(int n, uint64_t seed, SampleMode mode) {
  if (n < 1) throw error(errc::param_out_of_range, "sample count");
  std::vector<BlochState> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(sample_bloch_one(seed, i, mode));
  return out;
}

}  // namespace petz
