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

#include <atomic>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "petz/channel.hpp"
#include "petz/circuit.hpp"
#include "petz/contour.hpp"
#include "petz/dilation.hpp"
#include "petz/ion_noise.hpp"
#include "petz/petz_map.hpp"
#include "petz/qsd.hpp"
#include "petz/sampling.hpp"
#include "petz/su4.hpp"

namespace petz {

inline constexpr const char* tool_version = "petz-1.0.0";

/// Deterministic parallel for: results must be written to per-index slots.
inline void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next(0);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

struct SweepConfig {
  ChannelKind kind = ChannelKind::Dephasing;
  double p = 0.5;
  BlochState base{0.5, M_PI / 2, M_PI / 4};  // (R0, theta0, phi0)
  double d_r = 0.0;
  double th_min = -M_PI / 2, th_max = M_PI / 2;
  int th_steps = 201;
  double ph_min = -M_PI / 2, ph_max = M_PI / 2;
  int ph_steps = 201;
  double level = 0.01;
  std::vector<double> delta_grid;
  int samples = 10000;
  uint64_t seed = 1;
  SampleMode mode = SampleMode::ball;
  int workers = 1;

  void check() const {
    if (th_steps < 2 || ph_steps < 2) throw error(errc::bad_config, "grid steps >= 2");
    if (samples < 1) throw error(errc::bad_config, "samples >= 1");
    if (!(level > 0.0 && level < 1.0)) throw error(errc::bad_config, "level in (0,1)");
    if (p < 0.0 || p > 1.0) throw error(errc::bad_config, "p in [0,1]");
  }
};

inline KrausChannel make_channel(ChannelKind kind, double p) {
  switch (kind) {
    case ChannelKind::Dephasing: return make_dephasing(p);
    case ChannelKind::AmplitudeDamping: return make_amplitude_damping(p);
    case ChannelKind::Depolarizing: return make_depolarizing(p);
    case ChannelKind::Erasure: return make_erasure({1.0, 0.0});
    case ChannelKind::Custom: break;
  }
  throw error(errc::bad_config, "cannot construct custom channel from parameters");
}

struct PriorSweepResult {
  GridField field;   // xs = dtheta, ys = dphi, values = deltaF
  Contour contour;
};

inline PriorSweepResult sweep_prior(const SweepConfig& cfg) {
  cfg.check();
  const KrausChannel ch = make_channel(cfg.kind, cfg.p);
  PriorSweepResult res;
  res.field.xs.resize(cfg.th_steps);
  res.field.ys.resize(cfg.ph_steps);
  for (int i = 0; i < cfg.th_steps; ++i)
    res.field.xs[i] = cfg.th_min + (cfg.th_max - cfg.th_min) * i / (cfg.th_steps - 1);
  for (int j = 0; j < cfg.ph_steps; ++j)
    res.field.ys[j] = cfg.ph_min + (cfg.ph_max - cfg.ph_min) * j / (cfg.ph_steps - 1);
  res.field.values.assign(static_cast<size_t>(cfg.th_steps) * cfg.ph_steps, 0.0);
  parallel_for(cfg.th_steps, cfg.workers, [&](int i) {
    for (int j = 0; j < cfg.ph_steps; ++j) {
      res.field.values[static_cast<size_t>(i) * cfg.ph_steps + j] =
          recovery_error_deltaF(cfg.base, cfg.d_r, res.field.xs[i], res.field.ys[j], ch);
    }
  });
  res.contour = extract_contour(res.field, cfg.level, 0.0, 0.0);
  return res;
}

struct ThresholdRow {
  double delta = 0.0;
  double mean_eps = 0.0;
  double max_eps = 0.0;
  int n = 0;
};

/// Synthesis route for one sampled state: Petz map at gamma = rho, dilation,
/// CNOT synthesis (3 or 20 budget), GPG rewrite.
inline GateSequence compile_petz_circuit(const PetzMap& pm) {
  const DilationUnitary dil = dilate_general(pm);
  GateSequence cnot_seq;
  if (dil.total_dim() == 4) {
    cnot_seq = decompose_su4(dil.u);
  } else {
    cnot_seq = decompose_3q(dil.u);
  }
  return rewrite_cnot_to_gpg(cnot_seq);
}

inline std::vector<ThresholdRow> sweep_threshold(const SweepConfig& cfg) {
  cfg.check();
  if (cfg.delta_grid.empty()) throw error(errc::bad_config, "empty delta grid");
  const KrausChannel ch = make_channel(cfg.kind, cfg.p);
  const int nd = static_cast<int>(cfg.delta_grid.size());
  const int n = cfg.samples;
  std::vector<double> eps(static_cast<size_t>(n) * nd, 0.0);
  parallel_for(n, cfg.workers, [&](int i) {
    const BlochState rho_s = sample_bloch_one(cfg.seed, i, cfg.mode);
    const ComplexMatrix rho = bloch_to_density(rho_s);
    const PetzMap pm = build_petz(ch, rho_s);
    const GateSequence gs = compile_petz_circuit(pm);
    for (int k = 0; k < nd; ++k)
      eps[static_cast<size_t>(i) * nd + k] =
          recovery_error_epsilon(pm, gs, cfg.delta_grid[k], rho);
  });
  std::vector<ThresholdRow> rows(nd);
  for (int k = 0; k < nd; ++k) {
    ThresholdRow& r = rows[k];
    r.delta = cfg.delta_grid[k];
    r.n = n;
    for (int i = 0; i < n; ++i) {
      const double e = eps[static_cast<size_t>(i) * nd + k];
      r.mean_eps += e;
      r.max_eps = std::max(r.max_eps, e);
    }
    r.mean_eps /= n;
  }
  return rows;
}

// ---- CSV emission (deterministic; no timestamps) ----

inline std::string prior_csv(const SweepConfig& cfg, const PriorSweepResult& res) {
  std::ostringstream os;
  os << "# tool=" << tool_version << " petz sweep prior channel=" << kind_name(cfg.kind) << " p=" << format_double(cfg.p)
     << " R0=" << format_double(cfg.base.r) << " theta0=" << format_double(cfg.base.theta)
     << " phi0=" << format_double(cfg.base.phi) << " dR=" << format_double(cfg.d_r)
     << " level=" << format_double(cfg.level) << " area=" << format_double(res.contour.area)
     << "\n";
  os << "dtheta,dphi,deltaF\n";
  for (size_t i = 0; i < res.field.xs.size(); ++i)
    for (size_t j = 0; j < res.field.ys.size(); ++j)
      os << format_double(res.field.xs[i]) << "," << format_double(res.field.ys[j]) << ","
         << format_double(res.field.at(i, j)) << "\n";
  return os.str();
}

inline std::string contour_csv(const SweepConfig& cfg, const PriorSweepResult& res) {
  std::ostringstream os;
  os << "# contour level=" << format_double(cfg.level)
     << " area=" << format_double(res.contour.area) << " closed=" << res.contour.closed << "\n";
  os << "dtheta,dphi\n";
  for (const auto& p : res.contour.polyline)
    os << format_double(p.first) << "," << format_double(p.second) << "\n";
  return os.str();
}

inline std::string threshold_csv(const SweepConfig& cfg, const std::vector<ThresholdRow>& rows) {
  std::ostringstream os;
  os << "# tool=" << tool_version << " petz sweep threshold channel=" << kind_name(cfg.kind)
     << " p=" << format_double(cfg.p) << " N=" << cfg.samples << " seed=" << cfg.seed
     << " mode=" << (cfg.mode == SampleMode::ball ? "ball" : "surface") << "\n";
  os << "delta,mean_eps,max_eps,n\n";
  for (const auto& r : rows)
    os << format_double(r.delta) << "," << format_double(r.mean_eps) << ","
       << format_double(r.max_eps) << "," << r.n << "\n";
  return os.str();
}

}  // namespace petz
