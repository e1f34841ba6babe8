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

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "petz/bloch.hpp"
#include "petz/channel.hpp"
#include "petz/dilation.hpp"
#include "petz/petz_map.hpp"
#include "petz/sweep.hpp"

namespace petz {

using json = nlohmann::json;

inline json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const json& j) {
  const int rows = static_cast<int>(j.size());
  if (rows == 0) throw error(errc::parse_error, "empty matrix");
  const int cols = static_cast<int>(j.at(0).size());
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c)
      m(i, c) = cplx(j.at(i).at(c).at(0).get<double>(), j.at(i).at(c).at(1).get<double>());
  return m;
}

inline json channel_to_json(const KrausChannel& ch) {
  json j;
  j["kind"] = kind_name(ch.kind);
  j["p"] = ch.p;
  j["dim"] = ch.dim();
  json ks = json::array();
  for (const auto& k : ch.kraus) ks.push_back(matrix_to_json(k));
  j["kraus"] = ks;
  return j;
}

inline KrausChannel channel_from_json(const json& j) {
  KrausChannel ch;
  ch.kind = kind_from_name(j.at("kind").get<std::string>());
  ch.p = j.value("p", 0.0);
  for (const auto& k : j.at("kraus")) ch.kraus.push_back(matrix_from_json(k));
  return ch;
}

inline json petz_map_to_json(const PetzMap& pm) {
  json j;
  json ks = json::array();
  for (const auto& k : pm.kraus) ks.push_back(matrix_to_json(k));
  j["kraus"] = ks;
  j["gamma"] = {{"R", pm.gamma.r}, {"theta", pm.gamma.theta}, {"phi", pm.gamma.phi}};
  j["channel"] = channel_to_json(pm.source);
  j["support_rank"] = pm.support_rank;
  j["completed"] = pm.completed();
  if (pm.completed()) {
    json cs = json::array();
    for (const auto& k : pm.completion) cs.push_back(matrix_to_json(k));
    j["completion"] = cs;
  }
  return j;
}

inline json unitary_to_json(const DilationUnitary& d) {
  json j;
  j["dim"] = d.total_dim();
  j["kraus_rank"] = d.kraus_rank;
  j["ancilla_qubits"] = d.ancilla_qubits;
  j["padding"] = d.padding;
  j["matrix"] = matrix_to_json(d.u);
  return j;
}

/// Plain-text column-major table, 17 significant digits: one "re im" pair
/// per line, column by column; first line "rows cols".
inline std::string unitary_to_table(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << " " << m.cols() << "\n";
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      os << format_double(m(i, j).real()) << " " << format_double(m(i, j).imag()) << "\n";
  return os.str();
}

inline void sweep_config_from_json(const json& j, SweepConfig& cfg) {
  if (j.contains("channel")) cfg.kind = kind_from_name(j["channel"].get<std::string>());
  if (j.contains("p")) cfg.p = j["p"].get<double>();
  if (j.contains("gamma")) {
    cfg.base.r = j["gamma"].value("R", cfg.base.r);
    cfg.base.theta = j["gamma"].value("theta", cfg.base.theta);
    cfg.base.phi = j["gamma"].value("phi", cfg.base.phi);
  }
  if (j.contains("dR")) cfg.d_r = j["dR"].get<double>();
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    cfg.th_min = g.value("theta_min", cfg.th_min);
    cfg.th_max = g.value("theta_max", cfg.th_max);
    cfg.th_steps = g.value("theta_steps", cfg.th_steps);
    cfg.ph_min = g.value("phi_min", cfg.ph_min);
    cfg.ph_max = g.value("phi_max", cfg.ph_max);
    cfg.ph_steps = g.value("phi_steps", cfg.ph_steps);
  }
  if (j.contains("level")) cfg.level = j["level"].get<double>();
  if (j.contains("delta_grid")) cfg.delta_grid = j["delta_grid"].get<std::vector<double>>();
  if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
  if (j.contains("mode")) {
    const std::string m = j["mode"].get<std::string>();
    if (m == "ball") cfg.mode = SampleMode::ball;
    else if (m == "surface") cfg.mode = SampleMode::surface;
    else throw error(errc::bad_config, "mode must be ball or surface");
  }
  if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
}

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw error(errc::bad_config, "cannot open " + path);
  f << body;
}

}  // namespace petz
