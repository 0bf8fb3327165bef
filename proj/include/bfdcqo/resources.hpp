// Copyright 2026 The bfdcqo Authors
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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bfdcqo/cd.hpp"
#include "bfdcqo/errors.hpp"
#include "bfdcqo/pauli.hpp"

namespace bfdcqo {

enum class NativeSet { cz_set, ms_set };

inline std::string native_set_name(NativeSet s) { return s == NativeSet::cz_set ? "cz" : "ms"; }

/// One native instruction. Angles follow the gate's own parameter order:
/// RZ/VZ(theta), GPI/GPI2(phi), MS(phi0, phi1, theta). Qubits are listed
/// control first for CZ and MS.
struct Gate {
  std::string name;
  std::vector<Index> qubits;
  std::vector<double> params;

  bool is_entangling() const { return qubits.size() == 2; }
  /// VZ is a frame change with no physical pulse.
  bool is_virtual() const { return name == "VZ"; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

namespace detail {

constexpr double kHalfPi = std::numbers::pi / 2.0;

inline void emit_h(std::vector<Gate>& out, Index q) {
  out.push_back({"RZ", {q}, {kHalfPi}});
  out.push_back({"SX", {q}, {}});
  out.push_back({"RZ", {q}, {kHalfPi}});
}

inline void emit_cnot(std::vector<Gate>& out, Index c, Index t, NativeSet set) {
  if (set == NativeSet::cz_set) {
    emit_h(out, t);
    out.push_back({"CZ", {c, t}, {}});
    emit_h(out, t);
  } else {
    out.push_back({"GPI2", {c}, {kHalfPi}});
    out.push_back({"MS", {c, t}, {std::numbers::pi, 0.0, kHalfPi}});
    out.push_back({"GPI2", {c}, {-kHalfPi}});
    out.push_back({"VZ", {c}, {kHalfPi}});
    out.push_back({"GPI2", {t}, {0.0}});
  }
}

/// Rotates the eigenbasis of p onto Z (forward) or back (reverse).
inline void emit_basis(std::vector<Gate>& out, Index q, Pauli p, NativeSet set, bool reverse) {
  if (p == Pauli::Z) return;
  if (set == NativeSet::cz_set) {
    if (p == Pauli::X) {
      emit_h(out, q);
    } else if (!reverse) {
      out.push_back({"SX", {q}, {}});
    } else {
      out.push_back({"SX", {q}, {}});
      out.push_back({"X", {q}, {}});
    }
  } else {
    const double phi = p == Pauli::X ? (reverse ? kHalfPi : -kHalfPi) : (reverse ? std::numbers::pi : 0.0);
    out.push_back({"GPI2", {q}, {phi}});
  }
}

inline void emit_rz(std::vector<Gate>& out, Index q, double theta, NativeSet set) {
  out.push_back({set == NativeSet::cz_set ? "RZ" : "VZ", {q}, {theta}});
}

}  // namespace detail

/// exp(-i theta/2 P) as basis changes, a CNOT ladder onto the last support
/// qubit, RZ(theta), and the mirror image. A k-local string costs 2(k-1)
/// entangling gates on either target set.
inline std::vector<Gate> decompose_rotation(const PauliString& p, double theta, NativeSet set) {
  if (p.is_identity()) throw InvalidArgument("decompose_rotation: empty support");
  const auto& ops = p.ops();
  std::vector<Gate> out;
  for (const auto& [q, op] : ops) detail::emit_basis(out, q, op, set, false);
  for (std::size_t k = 0; k + 1 < ops.size(); ++k)
    detail::emit_cnot(out, ops[k].first, ops[k + 1].first, set);
  detail::emit_rz(out, ops.back().first, theta, set);
  for (std::size_t k = ops.size() - 1; k-- > 0;)
    detail::emit_cnot(out, ops[k].first, ops[k + 1].first, set);
  for (const auto& [q, op] : ops) detail::emit_basis(out, q, op, set, true);
  return out;
}

/// Ry(theta) on one qubit; nothing for theta == 0.
inline std::vector<Gate> decompose_ry(Index q, double theta, NativeSet set) {
  if (theta == 0.0) return {};
  if (set == NativeSet::cz_set)
    return {{"SX", {q}, {}},
            {"RZ", {q}, {theta + std::numbers::pi}},
            {"SX", {q}, {}},
            {"RZ", {q}, {std::numbers::pi}}};
  return {{"GPI2", {q}, {0.0}}, {"VZ", {q}, {theta}}, {"GPI2", {q}, {std::numbers::pi}}};
}

inline std::vector<Gate> decompose_circuit(const Circuit& c, NativeSet set) {
  std::vector<Gate> out;
  for (std::size_t q = 0; q < c.prep_angles.size(); ++q) {
    auto g = decompose_ry(static_cast<Index>(q), c.prep_angles[q], set);
    out.insert(out.end(), g.begin(), g.end());
  }
  for (const auto& r : c.rotations) {
    auto g = decompose_rotation(r.pauli, r.theta, set);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

struct GateCounts {
  std::map<std::string, std::size_t> by_name;
  std::size_t entangling = 0;
  /// Physical single-qubit gates; virtual Z frame changes are excluded.
  std::size_t one_qubit = 0;
  std::size_t depth = 0;

  std::size_t total() const { return entangling + one_qubit; }
  std::size_t count(const std::string& name) const {
    auto it = by_name.find(name);
    return it == by_name.end() ? 0 : it->second;
  }

  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

/// Counts plus as-soon-as-possible depth with unit duration per physical
/// gate and no routing constraints.
inline GateCounts count_gates(const std::vector<Gate>& gates, std::size_t n_qubits) {
  GateCounts out;
  std::vector<std::size_t> level(n_qubits, 0);
  for (const auto& g : gates) {
    ++out.by_name[g.name];
    if (g.is_virtual()) continue;
    if (g.is_entangling())
      ++out.entangling;
    else
      ++out.one_qubit;
    std::size_t layer = 0;
    for (auto q : g.qubits) {
      if (q >= n_qubits) throw DimensionError("count_gates: qubit index out of range");
      layer = std::max(layer, level[q]);
    }
    for (auto q : g.qubits) level[q] = layer + 1;
    out.depth = std::max(out.depth, layer + 1);
  }
  return out;
}

inline GateCounts count_circuit(const Circuit& c, NativeSet set) {
  return count_gates(decompose_circuit(c, set), c.n);
}

/// Gate-name columns reported for each target set, in table order.
inline std::vector<std::string> gate_columns(NativeSet set) {
  if (set == NativeSet::cz_set) return {"X", "SX", "RZ", "CZ"};
  return {"MS", "GPI", "GPI2", "VZ"};
}

inline void write_counts_csv_header(std::ostream& os, NativeSet set) {
  os << "iteration";
  for (const auto& name : gate_columns(set)) os << ',' << name;
  os << ",entangling,one_qubit,depth\n";
}

inline void write_counts_csv_row(std::ostream& os, std::size_t iteration, const GateCounts& g,
                                 NativeSet set) {
  os << iteration;
  for (const auto& name : gate_columns(set)) os << ',' << g.count(name);
  os << ',' << g.entangling << ',' << g.one_qubit << ',' << g.depth << '\n';
}

// ---------------------------------------------------------------------------
// Dense matrices, for verification at small n
// ---------------------------------------------------------------------------

inline Eigen::MatrixXcd gate_matrix(const Gate& g) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  auto rz = [&](double t) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::exp(-i * (t / 2.0));
    m(1, 1) = std::exp(i * (t / 2.0));
    return Eigen::MatrixXcd(m);
  };
  Eigen::MatrixXcd m;
  if (g.name == "X") {
    m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1.0;
  } else if (g.name == "SX") {
    m.resize(2, 2);
    m << C(0.5, 0.5), C(0.5, -0.5), C(0.5, -0.5), C(0.5, 0.5);
  } else if (g.name == "RZ" || g.name == "VZ") {
    m = rz(g.params.at(0));
  } else if (g.name == "CZ") {
    m = Eigen::MatrixXcd::Identity(4, 4);
    m(3, 3) = -1.0;
  } else if (g.name == "GPI") {
    const double phi = g.params.at(0);
    m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 1) = std::exp(-i * phi);
    m(1, 0) = std::exp(i * phi);
  } else if (g.name == "GPI2") {
    const double phi = g.params.at(0);
    m.resize(2, 2);
    m << 1.0, -i * std::exp(-i * phi), -i * std::exp(i * phi), 1.0;
    m /= std::sqrt(2.0);
  } else if (g.name == "MS") {
    const double p0 = g.params.at(0), p1 = g.params.at(1), t = g.params.at(2);
    const double c = std::cos(t / 2.0), s = std::sin(t / 2.0);
    m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
    m(0, 3) = -i * std::exp(-i * (p0 + p1)) * s;
    m(3, 0) = -i * std::exp(i * (p0 + p1)) * s;
    m(1, 2) = -i * std::exp(-i * (p0 - p1)) * s;
    m(2, 1) = -i * std::exp(i * (p0 - p1)) * s;
  } else {
    throw UnsupportedGate("gate_matrix: unknown gate " + g.name);
  }
  return m;
}

/// Full 2^n unitary of a gate list applied left to right; qubit 0 is the
/// most significant bit.
inline Eigen::MatrixXcd circuit_unitary(const std::vector<Gate>& gates, std::size_t n) {
  if (n > 10) throw SizeLimitError("circuit_unitary: n too large for a dense matrix");
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : gates) {
    const Eigen::MatrixXcd local = gate_matrix(g);
    const std::size_t k = g.qubits.size();
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
      std::size_t sub_in = 0;
      for (std::size_t a = 0; a < k; ++a)
        sub_in = (sub_in << 1) | ((col >> (n - 1 - g.qubits[a])) & 1U);
      for (std::size_t sub_out = 0; sub_out < (std::size_t{1} << k); ++sub_out) {
        const auto amp = local(static_cast<Eigen::Index>(sub_out), static_cast<Eigen::Index>(sub_in));
        if (amp == std::complex<double>(0.0, 0.0)) continue;
        std::size_t row = col;
        for (std::size_t a = 0; a < k; ++a) {
          const std::size_t bit = n - 1 - g.qubits[a];
          const std::size_t v = (sub_out >> (k - 1 - a)) & 1U;
          row = (row & ~(std::size_t{1} << bit)) | (v << bit);
        }
        full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += amp;
      }
    }
    u = full * u;
  }
  return u;
}

/// Distance between two unitaries after removing the best global phase.
inline double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const std::complex<double> overlap = (b.adjoint() * a).trace();
  const std::complex<double> phase =
      std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : std::complex<double>(1.0, 0.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace bfdcqo
