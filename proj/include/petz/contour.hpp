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
#include <map>
#include <vector>

#include "petz/errors.hpp"

namespace petz {

struct GridField {
  std::vector<double> xs;      // first axis coordinates
  std::vector<double> ys;      // second axis coordinates
  std::vector<double> values;  // row-major: values[i*ys.size() + j]

  double at(size_t i, size_t j) const { return values[i * ys.size() + j]; }
};

struct Contour {
  std::vector<std::pair<double, double>> polyline;  // closed; last != first
  double area = 0.0;
  bool closed = false;
};

namespace detail {

struct EdgeKey {
  int i, j, horiz;  // grid edge from node (i,j) toward +y (horiz=1) or +x (0)
  bool operator<(const EdgeKey& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return horiz < o.horiz;
  }
};

inline double shoelace(const std::vector<std::pair<double, double>>& poly) {
  double a = 0;
  const size_t n = poly.size();
  for (size_t k = 0; k < n; ++k) {
    const auto& p = poly[k];
    const auto& q = poly[(k + 1) % n];
    a += p.first * q.second - q.first * p.second;
  }
  return std::abs(a) / 2.0;
}

inline bool point_in_polygon(const std::vector<std::pair<double, double>>& poly, double x,
                             double y) {
  bool in = false;
  const size_t n = poly.size();
  for (size_t k = 0, m = n - 1; k < n; m = k++) {
    const double xi = poly[k].first, yi = poly[k].second;
    const double xj = poly[m].first, yj = poly[m].second;
    if (((yi > y) != (yj > y)) && (x < (xj - xi) * (y - yi) / (yj - yi) + xi)) in = !in;
  }
  return in;
}

}  // namespace detail

/// Marching-squares level set with linear interpolation. The grid is padded
/// with one exterior ring above the level so regions touching the border
/// close along it. Returns the closed component containing (x0, y0), or an
/// empty contour when none contains it.
inline Contour extract_contour(const GridField& f, double level, double x0 = 0.0,
                               double y0 = 0.0) {
  const int nx = static_cast<int>(f.xs.size());
  const int ny = static_cast<int>(f.ys.size());
  if (nx < 2 || ny < 2) throw error(errc::bad_config, "contour grid too small");
  // padded grid
  const double hx0 = f.xs[1] - f.xs[0], hx1 = f.xs[nx - 1] - f.xs[nx - 2];
  const double hy0 = f.ys[1] - f.ys[0], hy1 = f.ys[ny - 1] - f.ys[ny - 2];
  std::vector<double> xs(nx + 2), ys(ny + 2);
  xs[0] = f.xs[0] - hx0;
  for (int i = 0; i < nx; ++i) xs[i + 1] = f.xs[i];
  xs[nx + 1] = f.xs[nx - 1] + hx1;
  ys[0] = f.ys[0] - hy0;
  for (int j = 0; j < ny; ++j) ys[j + 1] = f.ys[j];
  ys[ny + 1] = f.ys[ny - 1] + hy1;
  const double big = level + 1.0;
  auto val = [&](int i, int j) -> double {
    if (i < 1 || i > nx || j < 1 || j > ny) return big;
    return f.at(i - 1, j - 1);
  };
  // segments on cell edges keyed by crossing edge
  std::map<detail::EdgeKey, std::vector<detail::EdgeKey>> adj;
  std::map<detail::EdgeKey, std::pair<double, double>> pts;
  auto cross = [&](int i, int j, int horiz) -> std::pair<double, double> {
    const double va = val(i, j);
    const double vb = horiz ? val(i, j + 1) : val(i + 1, j);
    const double t = (level - va) / (vb - va);
    if (horiz) return {xs[i], ys[j] + t * (ys[j + 1] - ys[j])};
    return {xs[i] + t * (xs[i + 1] - xs[i]), ys[j]};
  };
  const int cnx = nx + 1, cny = ny + 1;  // padded cells
  for (int i = 0; i < cnx; ++i) {
    for (int j = 0; j < cny; ++j) {
      const bool b00 = val(i, j) <= level;
      const bool b01 = val(i, j + 1) <= level;
      const bool b10 = val(i + 1, j) <= level;
      const bool b11 = val(i + 1, j + 1) <= level;
      const int code = (b00 ? 1 : 0) | (b10 ? 2 : 0) | (b11 ? 4 : 0) | (b01 ? 8 : 0);
      if (code == 0 || code == 15) continue;
      // cell edges: south (y_j), north (y_{j+1}), west (x_i), east (x_{i+1})
      const detail::EdgeKey south{i, j, 0}, north{i, j + 1, 0};
      const detail::EdgeKey west{i, j, 1}, east{i + 1, j, 1};
      auto add = [&](detail::EdgeKey a, detail::EdgeKey b) {
        if (!pts.count(a)) pts[a] = cross(a.i, a.j, a.horiz);
        if (!pts.count(b)) pts[b] = cross(b.i, b.j, b.horiz);
        adj[a].push_back(b);
        adj[b].push_back(a);
      };
      switch (code) {
        case 1: case 14: add(south, west); break;
        case 2: case 13: add(south, east); break;
        case 4: case 11: add(north, east); break;
        case 8: case 7: add(north, west); break;
        case 3: case 12: add(west, east); break;
        case 6: case 9: add(south, north); break;
        case 5: add(south, west); add(north, east); break;   // saddle
        case 10: add(south, east); add(north, west); break;  // saddle
      }
    }
  }
  // assemble closed loops, keep the one containing (x0, y0)
  std::map<detail::EdgeKey, bool> used;
  Contour best;
  for (const auto& kv : adj) {
    if (used[kv.first]) continue;
    std::vector<std::pair<double, double>> poly;
    detail::EdgeKey cur = kv.first;
    while (!used[cur]) {
      used[cur] = true;
      poly.push_back(pts[cur]);
      bool found = false;
      for (const auto& cand : adj[cur]) {
        if (!used[cand]) {
          cur = cand;
          found = true;
          break;
        }
      }
      if (!found) break;  // loop closed back to the start
    }
    if (poly.size() >= 3 && detail::point_in_polygon(poly, x0, y0)) {
      best.polyline = poly;
      best.area = detail::shoelace(poly);
      best.closed = true;
      return best;
    }
  }
  return best;
}

}  // namespace petz
