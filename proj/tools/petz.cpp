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

// Command-line front end: construct Petz recovery maps and their circuits,
// run the prior-boundary and gate-error-threshold sweeps, and run the
// built-in verification suite.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "petz/io_json.hpp"
#include "petz/qsd.hpp"
#include "petz/su4.hpp"
#include "petz/sweep.hpp"

namespace {

using namespace petz;

BlochState parse_gamma(const std::string& s) {
  BlochState g;
  std::istringstream is(s);
  char c1, c2;
  if (!(is >> g.r >> c1 >> g.theta >> c2 >> g.phi) || c1 != ',' || c2 != ',')
    throw error(errc::bad_config, "--gamma expects R,theta,phi");
  return g;
}

void emit_or_print(const std::string& out, const std::string& body) {
  if (out.empty()) {
    std::cout << body;
  } else {
    write_file(out, body);
  }
}

int cmd_build(const std::string& kind_s, double p, const std::string& gamma_s,
              const std::string& emit, const std::string& out, const std::string& format) {
  const ChannelKind kind = kind_from_name(kind_s);
  const KrausChannel ch = make_channel(kind, p);
  const BlochState gamma = parse_gamma(gamma_s);
  const PetzMap pm = build_petz(ch, gamma);
  if (emit == "kraus") {
    emit_or_print(out, petz_map_to_json(pm).dump(2) + "\n");
    return 0;
  }
  const DilationUnitary dil = dilate_general(pm);
  if (emit == "unitary") {
    if (format == "table") {
      emit_or_print(out, unitary_to_table(dil.u));
    } else {
      emit_or_print(out, unitary_to_json(dil).dump(2) + "\n");
    }
    return 0;
  }
  GateSequence circuit =
      dil.total_dim() == 4 ? decompose_su4(dil.u) : decompose_3q(dil.u);
  if (emit == "circuit") {
    emit_or_print(out, to_text(circuit));
    return 0;
  }
  if (emit == "gpg-circuit") {
    emit_or_print(out, to_text(rewrite_cnot_to_gpg(circuit)));
    return 0;
  }
  throw error(errc::bad_config, "--emit must be kraus|unitary|circuit|gpg-circuit");
}

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

void run_core_checks(std::vector<Check>& checks) {
  // channel validation grid
  {
    bool ok = true;
    std::ostringstream det;
    for (int pk = 0; pk <= 10; ++pk) {
      const double p = pk / 10.0;
      for (const auto& ch :
           {make_dephasing(p), make_amplitude_damping(p), make_depolarizing(p)}) {
        const ValidationReport r = validate(ch);
        if (!r.pass()) {
          ok = false;
          det << kind_name(ch.kind) << " p=" << p << " tp=" << r.tp_residual
              << " choi=" << r.min_choi_eig << "; ";
        }
      }
    }
    checks.push_back({"channel-cptp-grid", ok, det.str()});
  }
  // reference recovery across kinds
  {
    bool ok = true;
    double worst = 1.0;
    for (uint64_t i = 0; i < 60; ++i) {
      const BlochState g = sample_bloch_one(99, i, SampleMode::ball);
      const double p = 0.05 + 0.9 * sample_bloch_one(7, i, SampleMode::ball).r;
      for (const auto& ch : {make_dephasing(p), make_amplitude_damping(p), make_depolarizing(p)}) {
        const PetzMap pm = build_petz(ch, g);
        const ComplexMatrix gm = bloch_to_density(g);
        const double f = uhlmann_fidelity(gm, pm.apply(apply(ch, gm)));
        worst = std::min(worst, f);
        ok &= (f >= 1.0 - 1e-9);
      }
    }
    checks.push_back({"petz-reference-recovery", ok, "worst F = " + format_double(worst)});
  }
  // dilation channel equivalence
  {
    bool ok = true;
    double worst = 0.0;
    for (uint64_t i = 0; i < 20; ++i) {
      const BlochState g = sample_bloch_one(123, i, SampleMode::ball);
      for (const auto& ch : {make_dephasing(0.4), make_amplitude_damping(0.6)}) {
        const PetzMap pm = build_petz(ch, g);
        const DilationUnitary dil = dilate_general(pm);
        const double d =
            distance(dilation_superoperator(dil), kraus_superoperator(pm.all_kraus(), 2));
        worst = std::max(worst, d);
        ok &= (d <= 1e-9);
      }
    }
    checks.push_back({"dilation-equivalence", ok, "worst superop dist = " + format_double(worst)});
  }
  // E_ph trace preservation identity
  {
    bool ok = true;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double delta = std::pow(10.0, -8.0 + 8.0 * k / 99.0);
      const KrausChannel e = eph_channel(delta, 0, 1, 2);
      const double resid = distance(kraus_sum(e), ComplexMatrix::identity(4));
      worst = std::max(worst, resid);
      ok &= (resid <= 1e-14);
    }
    checks.push_back({"eph-trace-preservation", ok, "worst residual = " + format_double(worst)});
  }
  // synthesis round trip on a couple of deterministic unitaries
  {
    bool ok = true;
    double worst = 0.0;
    for (uint64_t i = 0; i < 8; ++i) {
      const BlochState g = sample_bloch_one(5, i, SampleMode::ball);
      const PetzMap pm = build_petz(make_dephasing(0.3 + 0.05 * i), g);
      const DilationUnitary dil = dilate_general(pm);
      const GateSequence gs = decompose_su4(dil.u);
      const double d = verify_equiv(dil.u, gs);
      worst = std::max(worst, d);
      ok &= (d <= 1e-8) && (gs.cnot_count() <= 3);
    }
    checks.push_back({"su4-synthesis-roundtrip", ok, "worst dist = " + format_double(worst)});
  }
  // circuit text round trip
  {
    const BlochState g{0.5, M_PI / 2, M_PI / 4};
    const PetzMap pm = build_petz(make_amplitude_damping(0.5), g);
    const GateSequence gs = rewrite_cnot_to_gpg(decompose_su4(dilate_general(pm).u));
    const GateSequence back = from_text(to_text(gs));
    const bool ok = to_text(back) == to_text(gs);
    checks.push_back({"circuit-text-roundtrip", ok, ""});
  }
}

int cmd_verify(const std::string& fixture, const std::string& report_path) {
  std::vector<Check> checks;
  if (fixture == "none" || fixture.empty()) {
    run_core_checks(checks);
  } else if (fixture == "tp-violation") {
    KrausChannel broken;
    broken.kind = ChannelKind::Custom;
    broken.kraus.push_back(0.9 * ComplexMatrix::identity(2));
    const ValidationReport r = validate(broken);
    checks.push_back({"fixture-tp-violation", r.pass(),
                      "tp_residual = " + format_double(r.tp_residual)});
  } else if (fixture == "cutoff") {
    bool surfaced = false;
    std::string what;
    try {
      GateSequence gs;
      gs.width = 2;
      gs.gates.push_back(Gate::gpg(0, 1, M_PI / 2));
      const GeneratorSet gens = residual_generators(gs, 1e-3);
      fock_oracle_channel(gens, 1e-3, 4);
    } catch (const error& e) {
      surfaced = (e.code() == errc::cutoff_too_small);
      what = e.what();
    }
    checks.push_back({"fixture-cutoff", !surfaced, what});
  } else {
    throw error(errc::bad_config, "--fixture must be none|tp-violation|cutoff");
  }
  json rep;
  rep["checks"] = json::array();
  bool all = true;
  for (const auto& c : checks) {
    rep["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    all &= c.pass;
  }
  rep["pass"] = all;
  const std::string body = rep.dump(2) + "\n";
  if (report_path.empty()) {
    std::cout << body;
  } else {
    write_file(report_path, body);
    std::cout << (all ? "PASS" : "FAIL") << "\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Petz recovery maps for single-qubit decoherence channels"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "construct a Petz map and emit artifacts");
  std::string channel = "dephasing", gamma = "0.5,1.5707963267948966,0.7853981633974483";
  std::string emit = "kraus", out, format = "json";
  double p = 0.5;
  build->add_option("--channel", channel, "dephasing|amplitude_damping|depolarizing|erasure");
  build->add_option("--p", p, "degree of decoherence in [0,1]");
  build->add_option("--gamma", gamma, "reference state R,theta,phi");
  build->add_option("--emit", emit, "kraus|unitary|circuit|gpg-circuit");
  build->add_option("--out,-o", out, "output path (stdout when omitted)");
  build->add_option("--format", format, "json|table (unitary only)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "parameter sweeps");
  sweep->require_subcommand(1);
  SweepConfig cfg;
  std::string sweep_gamma, config_path, sweep_out, contour_out, mode_s = "ball";
  std::string sweep_channel = "dephasing";
  std::vector<double> delta_grid;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--channel", sweep_channel, "channel kind");
    c->add_option("--p", cfg.p, "degree of decoherence");
    c->add_option("--gamma", sweep_gamma, "base state R,theta,phi");
    c->add_option("--seed", cfg.seed, "sampler seed");
    c->add_option("--workers", cfg.workers, "worker threads");
    c->add_option("--config", config_path, "JSON config (flags override)");
    c->add_option("--out,-o", sweep_out, "output CSV path");
  };

  auto* prior = sweep->add_subcommand("prior", "delta-F grid over (dtheta, dphi)");
  add_common(prior);
  prior->add_option("--dR", cfg.d_r, "radius mismatch");
  prior->add_option("--level", cfg.level, "contour level");
  prior->add_option("--theta-steps", cfg.th_steps, "grid steps (dtheta)");
  prior->add_option("--phi-steps", cfg.ph_steps, "grid steps (dphi)");
  prior->add_option("--theta-min", cfg.th_min);
  prior->add_option("--theta-max", cfg.th_max);
  prior->add_option("--phi-min", cfg.ph_min);
  prior->add_option("--phi-max", cfg.ph_max);
  prior->add_option("--contour-out", contour_out, "contour polyline CSV path");

  auto* thresh = sweep->add_subcommand("threshold", "mean/max recovery error vs gate error");
  add_common(thresh);
  thresh->add_option("--delta", delta_grid, "gate-error grid (repeatable)");
  thresh->add_option("--samples,-N", cfg.samples, "Monte Carlo sample count");
  thresh->add_option("--mode", mode_s, "ball|surface");

  // verify
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  std::string fixture = "none", report;
  verify->add_option("--fixture", fixture, "none|tp-violation|cutoff");
  verify->add_option("--report", report, "write JSON report to path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(channel, p, gamma, emit, out, format);
    if (sweep->parsed()) {
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw error(errc::bad_config, "cannot read " + config_path);
        json j = json::parse(f);
        sweep_config_from_json(j, cfg);
      }
      // flags override config
      if (!sweep_channel.empty()) cfg.kind = kind_from_name(sweep_channel);
      if (!sweep_gamma.empty()) cfg.base = parse_gamma(sweep_gamma);
      if (!delta_grid.empty()) cfg.delta_grid = delta_grid;
      if (mode_s == "surface") cfg.mode = SampleMode::surface;
      if (prior->parsed()) {
        const PriorSweepResult res = sweep_prior(cfg);
        emit_or_print(sweep_out, prior_csv(cfg, res));
        if (!contour_out.empty()) write_file(contour_out, contour_csv(cfg, res));
        return 0;
      }
      if (cfg.delta_grid.empty())
        cfg.delta_grid = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
      const auto rows = sweep_threshold(cfg);
      emit_or_print(sweep_out, threshold_csv(cfg, rows));
      return 0;
    }
    if (verify->parsed()) return cmd_verify(fixture, report);
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    const errc c = e.code();
    return (c == errc::bad_config || c == errc::parse_error) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
