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
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "petz/linalg.hpp"
#include "petz/matrix.hpp"

namespace petz {

/// Circuit gate. GPG(phi) is exp(-i (phi/2) Z⊗Z) on its qubit pair.
struct Gate {
  enum class Kind { RX, RY, RZ, H, CNOT, CZ, GPG };
  Kind kind;
  int q0 = 0;      // rotation target / control (CNOT) / first pair qubit
  int q1 = -1;     // CNOT target / second pair qubit
  double angle = 0.0;

  static Gate rx(int q, double a) { return {Kind::RX, q, -1, a}; }
  static Gate ry(int q, double a) { return {Kind::RY, q, -1, a}; }
  static Gate rz(int q, double a) { return {Kind::RZ, q, -1, a}; }
  static Gate h(int q) { return {Kind::H, q, -1, 0.0}; }
  static Gate cnot(int c, int t) { return {Kind::CNOT, c, t, 0.0}; }
  static Gate cz(int a, int b) { return {Kind::CZ, a, b, 0.0}; }
  static Gate gpg(int a, int b, double phi) { return {Kind::GPG, a, b, phi}; }

  bool is_entangler() const {
    return kind == Kind::CNOT || kind == Kind::CZ || kind == Kind::GPG;
  }
  bool is_rotation() const {
    return kind == Kind::RX || kind == Kind::RY || kind == Kind::RZ;
  }
};

struct GateSequence {
  int width = 0;
  std::vector<Gate> gates;  // time order: first gate applied first

  int entangler_count() const {
    int n = 0;
    for (const auto& g : gates) n += g.is_entangler();
    return n;
  }
  int cnot_count() const {
    int n = 0;
    for (const auto& g : gates) n += (g.kind == Gate::Kind::CNOT);
    return n;
  }
};

inline ComplexMatrix rot_x(double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  return ComplexMatrix(2, 2, {c, cplx(0, -s), cplx(0, -s), c});
}
inline ComplexMatrix rot_y(double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  return ComplexMatrix(2, 2, {c, -s, s, c});
}
inline ComplexMatrix rot_z(double t) {
  return ComplexMatrix(2, 2, {std::polar(1.0, -t / 2), 0, 0, std::polar(1.0, t / 2)});
}

inline ComplexMatrix gate_matrix(const Gate& g, int width) {
  const int n = 1 << width;
  switch (g.kind) {
    case Gate::Kind::RX: return embed_single(rot_x(g.angle), g.q0, width);
    case Gate::Kind::RY: return embed_single(rot_y(g.angle), g.q0, width);
    case Gate::Kind::RZ: return embed_single(rot_z(g.angle), g.q0, width);
    case Gate::Kind::H: return embed_single(hadamard(), g.q0, width);
    case Gate::Kind::CNOT: {
      ComplexMatrix c(4, 4);
      c(0, 0) = c(1, 1) = 1;
      c(2, 3) = c(3, 2) = 1;
      return embed_pair(c, g.q0, g.q1, width);
    }
    case Gate::Kind::CZ: {
      ComplexMatrix c = ComplexMatrix::identity(4);
      c(3, 3) = -1;
      return embed_pair(c, g.q0, g.q1, width);
    }
    case Gate::Kind::GPG: {
      ComplexMatrix c(4, 4);
      const cplx em = std::polar(1.0, -g.angle / 2);  // parity-even entries
      const cplx ep = std::polar(1.0, g.angle / 2);
      c(0, 0) = em;
      c(1, 1) = ep;
      c(2, 2) = ep;
      c(3, 3) = em;
      return embed_pair(c, g.q0, g.q1, width);
    }
  }
  return ComplexMatrix::identity(n);
}

inline void check_indices(const GateSequence& gs) {
  for (const auto& g : gs.gates) {
    if (g.q0 < 0 || g.q0 >= gs.width) throw error(errc::index_out_of_range, "gate qubit");
    if (g.is_entangler()) {
      if (g.q1 < 0 || g.q1 >= gs.width || g.q1 == g.q0)
        throw error(errc::index_out_of_range, "gate pair");
    }
  }
}

/// Product of the gate matrices in time order (leftmost gate applied first),
/// global phase normalized.
inline ComplexMatrix sequence_unitary(const GateSequence& gs) {
  check_indices(gs);
  ComplexMatrix u = ComplexMatrix::identity(1 << gs.width);
  for (const auto& g : gs.gates) u = gate_matrix(g, gs.width) * u;
  return phase_normalize(u);
}

/// Phase-minimized Frobenius distance min_phi || e^{i phi} V - U ||_F,
/// evaluated elementwise at the optimal phase (no cancellation near zero).
inline double phase_dist(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (v.rows() != u.rows() || v.cols() != u.cols())
    throw error(errc::dimension_mismatch, "phase_dist");
  const cplx tr = (u.dagger() * v).trace();
  const cplx ph = std::abs(tr) > 1e-300 ? std::conj(tr) / std::abs(tr) : cplx(1, 0);
  return distance(v * ph, u);
}

inline double verify_equiv(const ComplexMatrix& u, const GateSequence& gs) {
  return phase_dist(u, sequence_unitary(gs));
}

/// Merge adjacent same-axis rotations on the same qubit; drop near-zero
/// angles. Exact up to global phase.
inline GateSequence merge_adjacent_rotations(const GateSequence& gs) {
  GateSequence out;
  out.width = gs.width;
  for (const auto& g : gs.gates) {
    if (g.is_rotation() && !out.gates.empty()) {
      Gate& last = out.gates.back();
      if (last.kind == g.kind && last.q0 == g.q0) {
        last.angle += g.angle;
        while (last.angle > 2 * M_PI) last.angle -= 4 * M_PI;
        while (last.angle <= -2 * M_PI) last.angle += 4 * M_PI;
        if (std::abs(last.angle) < 1e-12 ||
            std::abs(std::abs(last.angle) - 2 * M_PI) < 1e-12)
          out.gates.pop_back();
        continue;
      }
    }
    if (g.is_rotation() &&
        (std::abs(g.angle) < 1e-12 || std::abs(std::abs(g.angle) - 2 * M_PI) < 1e-12))
      continue;
    out.gates.push_back(g);
  }
  return out;
}

/// Rewrites CNOT/CZ into GPG(pi/2) plus single-qubit rotations:
///   CZ(a,b)   = phase * Rz(-pi/2)_a Rz(-pi/2)_b GPG(pi/2)
///   CNOT(c,t) = H_t CZ(c,t) H_t,  H = phase * Ry(pi/2) Rz(pi)
inline GateSequence rewrite_cnot_to_gpg(const GateSequence& gs) {
  check_indices(gs);
  GateSequence out;
  out.width = gs.width;
  auto emit_h = [&](int q) {
    out.gates.push_back(Gate::rz(q, M_PI));
    out.gates.push_back(Gate::ry(q, M_PI / 2));
  };
  auto emit_cz = [&](int a, int b) {
    out.gates.push_back(Gate::gpg(a, b, M_PI / 2));
    out.gates.push_back(Gate::rz(a, -M_PI / 2));
    out.gates.push_back(Gate::rz(b, -M_PI / 2));
  };
  for (const auto& g : gs.gates) {
    switch (g.kind) {
      case Gate::Kind::RX:
      case Gate::Kind::RY:
      case Gate::Kind::RZ:
        out.gates.push_back(g);
        break;
      case Gate::Kind::H:
        emit_h(g.q0);
        break;
      case Gate::Kind::CZ:
        emit_cz(g.q0, g.q1);
        break;
      case Gate::Kind::CNOT:
        emit_h(g.q1);
        emit_cz(g.q0, g.q1);
        emit_h(g.q1);
        break;
      case Gate::Kind::GPG:
        throw error(errc::unsupported_gate, "GPG in rewrite input");
    }
  }
  return merge_adjacent_rotations(out);
}

// ---- text format: one gate per line ----

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string to_text(const GateSequence& gs) {
  std::ostringstream os;
  os << "# qubits " << gs.width << "\n";
  for (const auto& g : gs.gates) {
    switch (g.kind) {
      case Gate::Kind::RX: os << "RX q" << g.q0 << " " << format_double(g.angle); break;
      case Gate::Kind::RY: os << "RY q" << g.q0 << " " << format_double(g.angle); break;
      case Gate::Kind::RZ: os << "RZ q" << g.q0 << " " << format_double(g.angle); break;
      case Gate::Kind::H: os << "H q" << g.q0; break;
      case Gate::Kind::CNOT: os << "CNOT q" << g.q0 << " q" << g.q1; break;
      case Gate::Kind::CZ: os << "CZ q" << g.q0 << " q" << g.q1; break;
      case Gate::Kind::GPG:
        os << "GPG q" << g.q0 << " q" << g.q1 << " " << format_double(g.angle);
        break;
    }
    os << "\n";
  }
  return os.str();
}

inline int parse_qubit(const std::string& tok) {
  if (tok.size() < 2 || tok[0] != 'q') throw error(errc::parse_error, "qubit token: " + tok);
  return std::stoi(tok.substr(1));
}

inline GateSequence from_text(const std::string& text) {
  GateSequence gs;
  int declared_width = -1;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    if (op == "#") {
      std::string key;
      if (ls >> key && key == "qubits") ls >> declared_width;
      continue;
    }
    std::string qa, qb;
    double ang = 0;
    if (op == "RX" || op == "RY" || op == "RZ") {
      if (!(ls >> qa >> ang)) throw error(errc::parse_error, line);
      const int q = parse_qubit(qa);
      if (op == "RX") gs.gates.push_back(Gate::rx(q, ang));
      else if (op == "RY") gs.gates.push_back(Gate::ry(q, ang));
      else gs.gates.push_back(Gate::rz(q, ang));
    } else if (op == "H") {
      if (!(ls >> qa)) throw error(errc::parse_error, line);
      gs.gates.push_back(Gate::h(parse_qubit(qa)));
    } else if (op == "CNOT" || op == "CZ") {
      if (!(ls >> qa >> qb)) throw error(errc::parse_error, line);
      if (op == "CNOT") gs.gates.push_back(Gate::cnot(parse_qubit(qa), parse_qubit(qb)));
      else gs.gates.push_back(Gate::cz(parse_qubit(qa), parse_qubit(qb)));
    } else if (op == "GPG") {
      if (!(ls >> qa >> qb >> ang)) throw error(errc::parse_error, line);
      gs.gates.push_back(Gate::gpg(parse_qubit(qa), parse_qubit(qb), ang));
    } else {
      throw error(errc::parse_error, "unknown op: " + op);
    }
  }
  int w = 0;
  for (const auto& g : gs.gates) w = std::max({w, g.q0 + 1, g.q1 + 1});
  gs.width = std::max(declared_width, w);
  return gs;
}

}  // namespace petz
