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
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bfdcqo/errors.hpp"
#include "bfdcqo/hubo.hpp"
#include "bfdcqo/pauli.hpp"

namespace bfdcqo {

/// Where within each Trotter step the time-dependent drive is sampled.
enum class EvaluationPoints { step_end, step_midpoint };

/// Which single-qubit mixer the preparation layer targets.
///   plus_bias:  ground state of  hx X + hb Z  (the mixer used in the drive)
///   minus_bias: ground state of  hx X - hb Z
enum class PrepConvention { plus_bias, minus_bias };

/// Time discretisation and transverse fields of the counterdiabatic drive.
struct DriveSpec {
  double total_time = 1.0;
  std::size_t n_trot = 3;
  double theta_cutoff = 0.0;
  std::vector<double> hx;
  EvaluationPoints evaluation_points = EvaluationPoints::step_end;
  PrepConvention prep_convention = PrepConvention::plus_bias;

  static DriveSpec uniform(std::size_t n, double field = -1.0) {
    DriveSpec d;
    d.hx.assign(n, field);
    return d;
  }

  void validate(std::size_t n) const {
    if (hx.size() != n) throw DimensionError("DriveSpec: hx length does not match problem size");
    if (!(total_time > 0.0)) throw InvalidArgument("DriveSpec: total_time must be positive");
    if (n_trot < 1) throw InvalidArgument("DriveSpec: n_trot must be at least 1");
    if (!(theta_cutoff >= 0.0)) throw InvalidArgument("DriveSpec: theta_cutoff must be >= 0");
    for (double v : hx)
      if (!(std::abs(v) > 0.0) || !std::isfinite(v))
        throw InvalidArgument("DriveSpec: transverse fields must be finite and non-zero");
  }

  friend bool operator==(const DriveSpec&, const DriveSpec&) = default;
};

/// Longitudinal bias fields added to the mixer.
struct BiasState {
  std::vector<double> hb;

  static BiasState zeros(std::size_t n) { return BiasState{std::vector<double>(n, 0.0)}; }

  void validate(std::size_t n) const {
    if (hb.size() != n) throw DimensionError("BiasState: length does not match problem size");
    for (double v : hb)
      if (!std::isfinite(v)) throw InvalidArgument("BiasState: entries must be finite");
  }

  friend bool operator==(const BiasState&, const BiasState&) = default;
};

/// exp(-i theta/2 P).
struct Rotation {
  PauliString pauli;
  double theta = 0.0;
  friend bool operator==(const Rotation&, const Rotation&) = default;
};

/// Ry preparation layer followed by Pauli rotations in application order.
struct Circuit {
  std::size_t n = 0;
  std::vector<double> prep_angles;
  std::vector<Rotation> rotations;

  /// counts[k] = number of k-local rotations.
  std::vector<std::size_t> locality_counts() const {
    std::vector<std::size_t> counts(4, 0);
    for (const auto& r : rotations) {
      const std::size_t w = r.pauli.weight();
      if (w >= counts.size()) counts.resize(w + 1, 0);
      ++counts[w];
    }
    return counts;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

// ---------------------------------------------------------------------------
// Hamiltonians and the first nested commutator
// ---------------------------------------------------------------------------

/// sum_j hx_j X_j + hb_j Z_j
inline PauliSum initial_hamiltonian(const DriveSpec& d, const BiasState& b) {
  const std::size_t n = d.hx.size();
  if (b.hb.size() != n) throw DimensionError("initial_hamiltonian: bias length mismatch");
  PauliSum h(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto q = static_cast<Index>(j);
    h.add(PauliString::single(n, q, Pauli::X), d.hx[j]);
    if (b.hb[j] != 0.0) h.add(PauliString::single(n, q, Pauli::Z), b.hb[j]);
  }
  return h;
}

/// (1 - lambda) H_i + lambda H_f
inline PauliSum adiabatic_hamiltonian(const HuboProblem& p, const DriveSpec& d,
                                      const BiasState& b, double lambda) {
  return initial_hamiltonian(d, b) * Complex(1.0 - lambda) + hubo_to_pauli(p) * Complex(lambda);
}

/// O1 = [H_i, H_f] by symbolic Pauli algebra. The bias part of H_i is
/// diagonal and drops out; the result is anti-Hermitian.
inline PauliSum build_o1_symbolic(const HuboProblem& p, const DriveSpec& d, const BiasState& b) {
  d.validate(p.n());
  b.validate(p.n());
  return commutator(initial_hamiltonian(d, b), hubo_to_pauli(p));
}

/// O1 of the MAX 3-SAT Hamiltonian written clause by clause,
///   -i (w/4) sum_a hx_a s_a Y_a prod_{b != a} (I + s_b Z_b),
/// with s the violation sign of each literal. Independent of cnf_to_hubo.
inline PauliSum o1_from_clauses(const CnfInstance& c, const DriveSpec& d) {
  const std::size_t n = c.n_vars();
  d.validate(n);
  PauliSum o1(n);
  for (const auto& clause : c.clauses()) {
    const auto& l = clause.literals;
    for (std::size_t a = 0; a < 3; ++a) {
      const Literal& la = l[a];
      const Literal& lb = l[(a + 1) % 3];
      const Literal& lc = l[(a + 2) % 3];
      const double sb = violation_sign(lb);
      const double sc = violation_sign(lc);
      const Complex base = Complex(0.0, -clause.weight / 4.0) * d.hx[la.var] *
                           static_cast<double>(violation_sign(la));
      o1.add(PauliString(n, {{la.var, Pauli::Y}}), base);
      o1.add(PauliString(n, {{la.var, Pauli::Y}, {lb.var, Pauli::Z}}), base * sb);
      o1.add(PauliString(n, {{la.var, Pauli::Y}, {lc.var, Pauli::Z}}), base * sc);
      o1.add(PauliString(n, {{la.var, Pauli::Y}, {lb.var, Pauli::Z}, {lc.var, Pauli::Z}}),
             base * sb * sc);
    }
  }
  return o1;
}

// ---------------------------------------------------------------------------
// Closed-form nested-commutator norms
// ---------------------------------------------------------------------------
//
// Both norms use the orthonormal-string convention sum |c|^2 = Tr[O^+ O]/2^n.

/// Gamma_1 = 4 [ sum (hx_i h_i)^2 + sum_{i!=j} hx_i^2 J_ij^2
///              + sum K_ijk^2 (hx_i^2 + hx_j^2 + hx_k^2) ]
inline double gamma1(const HuboProblem& p, const DriveSpec& d) {
  d.validate(p.n());
  const auto x2 = [&](Index i) { return d.hx[i] * d.hx[i]; };
  double s = 0.0;
  for (const auto& [i, h] : p.linear()) s += x2(i) * h * h;
  for (const auto& [ij, J] : p.quadratic()) s += (x2(ij[0]) + x2(ij[1])) * J * J;
  for (const auto& [ijk, K] : p.cubic()) s += K * K * (x2(ijk[0]) + x2(ijk[1]) + x2(ijk[2]));
  return 4.0 * s;
}

namespace detail {

inline std::uint64_t pack(Index a, Index b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline std::uint64_t pack(Index a, Index b, Index c) {
  std::array<Index, 3> k{a, b, c};
  std::sort(k.begin(), k.end());
  return (static_cast<std::uint64_t>(k[0]) << 42) | (static_cast<std::uint64_t>(k[1]) << 21) | k[2];
}

/// Symmetric coefficient access plus per-site neighbour lists.
class CouplingIndex {
 public:
  explicit CouplingIndex(const HuboProblem& p)
      : h_(p.n(), 0.0), j_nbrs_(p.n()), k_nbrs_(p.n()) {
    for (const auto& [i, v] : p.linear()) h_[i] = v;
    for (const auto& [ij, v] : p.quadratic()) {
      j_.emplace(pack(ij[0], ij[1]), v);
      j_nbrs_[ij[0]].push_back(ij[1]);
      j_nbrs_[ij[1]].push_back(ij[0]);
    }
    for (const auto& [t, v] : p.cubic()) {
      k_.emplace(pack(t[0], t[1], t[2]), v);
      k_nbrs_[t[0]].push_back({t[1], t[2]});
      k_nbrs_[t[1]].push_back({t[0], t[2]});
      k_nbrs_[t[2]].push_back({t[0], t[1]});
    }
  }

  double h(Index i) const { return h_[i]; }
  double J(Index a, Index b) const {
    auto it = j_.find(pack(a, b));
    return it == j_.end() ? 0.0 : it->second;
  }
  double K(Index a, Index b, Index c) const {
    if (a == b || a == c || b == c) return 0.0;
    auto it = k_.find(pack(a, b, c));
    return it == k_.end() ? 0.0 : it->second;
  }
  /// Sites sharing a quadratic term with a.
  const std::vector<Index>& j_neighbours(Index a) const { return j_nbrs_[a]; }
  /// Index pairs (j < k) sharing a cubic term with a.
  const std::vector<IndexPair>& k_neighbours(Index a) const { return k_nbrs_[a]; }

 private:
  std::vector<double> h_;
  std::unordered_map<std::uint64_t, double> j_;
  std::unordered_map<std::uint64_t, double> k_;
  std::vector<std::vector<Index>> j_nbrs_;
  std::vector<std::vector<IndexPair>> k_nbrs_;
};

template <std::size_t N>
void sort_unique(std::vector<std::array<Index, N>>& v) {
  for (auto& a : v) std::sort(a.begin(), a.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

/// Gamma_2 = sum |c|^2 of O2 = [H_ad(lambda), O1] in closed form.
///
/// O2 separates into strings X_a Z_S (a single X on site a, Z's on a set S
/// of other sites), Z-only strings, and Y_a Y_c Z_S strings. The ten blocks
/// below are the squared coefficients of those families. Block sums over
/// site tuples are evaluated only on tuples whose bracket can be non-zero,
/// which are enumerated from the coupling graph.
inline double gamma2(const HuboProblem& p, const DriveSpec& d, const BiasState& b,
                     double lambda) {
  const std::size_t n = p.n();
  d.validate(n);
  b.validate(n);
  const detail::CouplingIndex c(p);
  const double mu = 1.0 - lambda;
  const auto x2 = [&](Index i) { return d.hx[i] * d.hx[i]; };
  const auto& hb = b.hb;

  double total = 0.0;

  for (Index a = 0; a < n; ++a) {
    const auto& jn = c.j_neighbours(a);
    const auto& kn = c.k_neighbours(a);
    const double ha = c.h(a);
    const double w = x2(a);

    // X_a alone.
    {
      double sq = ha * ha;
      for (Index j : jn) sq += c.J(a, j) * c.J(a, j);
      for (const auto& jk : kn) sq += std::pow(c.K(a, jk[0], jk[1]), 2);
      const double bracket = mu * hb[a] * ha + lambda * sq;
      total += 16.0 * w * bracket * bracket;
    }

    // X_a Z_j.
    {
      std::vector<Index> partners(jn.begin(), jn.end());
      for (const auto& jk : kn) {
        partners.push_back(jk[0]);
        partners.push_back(jk[1]);
      }
      std::sort(partners.begin(), partners.end());
      partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
      for (Index j : partners) {
        const double Jaj = c.J(a, j);
        double cross = Jaj * ha;
        for (const auto& jk : kn) {
          // K(a, j, q) J(a, q) over q != a, j
          Index q;
          if (jk[0] == j) q = jk[1];
          else if (jk[1] == j) q = jk[0];
          else continue;
          cross += c.K(a, j, q) * c.J(a, q);
        }
        const double bracket = mu * Jaj * hb[a] + 2.0 * lambda * cross;
        total += 16.0 * w * bracket * bracket;
      }
    }

    // X_a Z_j Z_k.
    {
      std::vector<IndexPair> pairs(kn.begin(), kn.end());
      for (std::size_t u = 0; u < jn.size(); ++u)
        for (std::size_t v = u + 1; v < jn.size(); ++v) pairs.push_back({jn[u], jn[v]});
      for (std::size_t u = 0; u < kn.size(); ++u)
        for (std::size_t v = u + 1; v < kn.size(); ++v) {
          // two cubic terms of a sharing exactly one further site
          const auto& s = kn[u];
          const auto& t = kn[v];
          for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
              if (s[x] == t[y] && s[1 - x] != t[1 - y]) pairs.push_back({s[1 - x], t[1 - y]});
        }
      detail::sort_unique(pairs);
      for (const auto& jk : pairs) {
        const Index j = jk[0];
        const Index k = jk[1];
        const double Kajk = c.K(a, j, k);
        double cross = c.J(a, j) * c.J(a, k) + Kajk * ha;
        for (const auto& s : kn) {
          // K(a, j, q) K(a, k, q) over q outside {a, j, k}
          Index q;
          if (s[0] == j) q = s[1];
          else if (s[1] == j) q = s[0];
          else continue;
          if (q == k) continue;
          cross += c.K(a, j, q) * c.K(a, k, q);
        }
        const double bracket = mu * Kajk * hb[a] + 2.0 * lambda * cross;
        total += 16.0 * w * bracket * bracket;
      }
    }

    if (lambda != 0.0) {
      // X_a Z_j Z_k Z_q: one quadratic and one cubic term of a.
      std::vector<std::array<Index, 3>> triples;
      for (Index j : jn)
        for (const auto& kq : kn)
          if (kq[0] != j && kq[1] != j) triples.push_back({j, kq[0], kq[1]});
      detail::sort_unique(triples);
      for (const auto& t : triples) {
        const double bracket = c.J(a, t[0]) * c.K(a, t[1], t[2]) +
                               c.J(a, t[1]) * c.K(a, t[0], t[2]) +
                               c.J(a, t[2]) * c.K(a, t[0], t[1]);
        total += 64.0 * lambda * lambda * w * bracket * bracket;
      }

      // X_a Z_j Z_k Z_q Z_r: two disjoint cubic terms of a.
      std::vector<std::array<Index, 4>> quads;
      for (std::size_t u = 0; u < kn.size(); ++u)
        for (std::size_t v = u + 1; v < kn.size(); ++v) {
          const auto& s = kn[u];
          const auto& t = kn[v];
          if (s[0] != t[0] && s[0] != t[1] && s[1] != t[0] && s[1] != t[1])
            quads.push_back({s[0], s[1], t[0], t[1]});
        }
      detail::sort_unique(quads);
      for (const auto& f : quads) {
        const double bracket = c.K(a, f[0], f[1]) * c.K(a, f[2], f[3]) +
                               c.K(a, f[0], f[2]) * c.K(a, f[1], f[3]) +
                               c.K(a, f[0], f[3]) * c.K(a, f[1], f[2]);
        total += 64.0 * lambda * lambda * w * bracket * bracket;
      }
    }
  }

  if (mu != 0.0) {
    // Z-only strings.
    double zonly = 0.0;
    for (const auto& [i, h] : p.linear()) zonly += x2(i) * x2(i) * h * h;
    for (const auto& [ij, J] : p.quadratic()) zonly += std::pow(x2(ij[0]) + x2(ij[1]), 2) * J * J;
    for (const auto& [t, K] : p.cubic())
      zonly += std::pow(x2(t[0]) + x2(t[1]) + x2(t[2]), 2) * K * K;
    total += 16.0 * mu * mu * zonly;

    // Y_a Y_c and Y_a Y_c Z_k strings.
    double yy = 0.0;
    for (const auto& [ij, J] : p.quadratic()) yy += x2(ij[0]) * x2(ij[1]) * J * J;
    for (const auto& [t, K] : p.cubic())
      yy += K * K * (x2(t[0]) * x2(t[1]) + x2(t[0]) * x2(t[2]) + x2(t[1]) * x2(t[2]));
    total += 64.0 * mu * mu * yy;
  }

  return total;
}

/// Below this Gamma_2 the first-order coefficient is reported as degenerate.
inline constexpr double kDegenerateGamma2 = 1e-30;

/// alpha_1 = -Gamma_1 / Gamma_2. Zero when Gamma_1 vanishes and Gamma_2 does
/// not; DegenerateDriveError when Gamma_2 vanishes.
inline double alpha1(const HuboProblem& p, const DriveSpec& d, const BiasState& b,
                     double lambda) {
  const double g2 = gamma2(p, d, b, lambda);
  if (g2 < kDegenerateGamma2)
    throw DegenerateDriveError("alpha1: Gamma_2 vanishes at lambda = " + std::to_string(lambda));
  const double g1 = gamma1(p, d);
  return g1 == 0.0 ? 0.0 : -g1 / g2;
}

// ---------------------------------------------------------------------------
// Schedule and state preparation
// ---------------------------------------------------------------------------

struct SchedulePoint {
  double lambda = 0.0;
  double lambda_dot = 0.0;
};

/// lambda(t) = sin^2( (pi/2) sin^2(pi t / 2T) ) and its time derivative.
/// The derivative is exactly zero at both endpoints.
inline SchedulePoint schedule(double t, double T) {
  if (!(T > 0.0)) throw InvalidArgument("schedule: T must be positive");
  if (!(t >= 0.0 && t <= T)) throw InvalidArgument("schedule: t outside [0, T]");
  constexpr double pi = std::numbers::pi;
  const double s = std::sin(pi * t / (2.0 * T));
  const double u = 0.5 * pi * s * s;
  SchedulePoint out;
  out.lambda = std::sin(u) * std::sin(u);
  if (t == 0.0 || t == T) {
    out.lambda_dot = 0.0;
  } else {
    out.lambda_dot = std::sin(2.0 * u) * (pi * pi / (4.0 * T)) * std::sin(pi * t / T);
  }
  if (t == T) out.lambda = 1.0;
  return out;
}

/// Per-qubit Ry angle preparing the ground state of the biased mixer.
inline std::vector<double> prepare_angles(const BiasState& b, const DriveSpec& d) {
  if (b.hb.size() != d.hx.size()) throw DimensionError("prepare_angles: size mismatch");
  std::vector<double> theta(b.hb.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double x = d.hx[i];
    const double hb = b.hb[i];
    if (!(std::abs(x) > 0.0)) throw InvalidArgument("prepare_angles: zero transverse field");
    const double lmin = -std::hypot(hb, x);
    theta[i] = d.prep_convention == PrepConvention::plus_bias
                   ? 2.0 * std::atan((lmin - hb) / x)
                   : 2.0 * std::atan((hb + lmin) / x);
  }
  return theta;
}

// ---------------------------------------------------------------------------
// Circuit synthesis
// ---------------------------------------------------------------------------

/// True when the exponent angle |gamma * dt| folded into [0, 2 pi) falls
/// under the cutoff. Exact zeros are always discarded.
inline bool below_cutoff(double gamma_dt, double cutoff) {
  if (gamma_dt == 0.0) return true;
  const double folded = std::fmod(std::abs(gamma_dt), 2.0 * std::numbers::pi);
  return folded < cutoff;
}

/// Trotterised CD-only evolution under H(t) = lambda_dot alpha_1 (i O1).
/// Term c P of i O1 at step time t_k becomes exp(-i theta/2 P) with
/// theta = 2 lambda_dot alpha_1 c dt. Norms come from the closed forms on p.
inline Circuit trotterize_cd(const PauliSum& o1, const HuboProblem& p, const DriveSpec& d,
                             const BiasState& b) {
  d.validate(p.n());
  b.validate(p.n());
  Circuit circuit;
  circuit.n = p.n();
  circuit.prep_angles = prepare_angles(b, d);
  if (o1.empty()) return circuit;

  std::vector<std::pair<const PauliString*, double>> drive;
  drive.reserve(o1.size());
  for (const auto& [pauli, coeff] : o1.terms())
    drive.emplace_back(&pauli, (Complex(0.0, 1.0) * coeff).real());

  const double dt = d.total_time / static_cast<double>(d.n_trot);
  for (std::size_t k = 1; k <= d.n_trot; ++k) {
    double t = d.evaluation_points == EvaluationPoints::step_end
                   ? static_cast<double>(k) * dt
                   : (static_cast<double>(k) - 0.5) * dt;
    if (k == d.n_trot && d.evaluation_points == EvaluationPoints::step_end) t = d.total_time;
    const SchedulePoint sp = schedule(t, d.total_time);
    if (sp.lambda_dot == 0.0) continue;
    const double amplitude = sp.lambda_dot * alpha1(p, d, b, sp.lambda);
    for (const auto& [pauli, c] : drive) {
      const double gamma_dt = amplitude * c * dt;
      if (below_cutoff(gamma_dt, d.theta_cutoff)) continue;
      circuit.rotations.push_back({*pauli, 2.0 * gamma_dt});
    }
  }
  return circuit;
}

inline Circuit build_cd_circuit(const HuboProblem& p, const DriveSpec& d, const BiasState& b) {
  return trotterize_cd(build_o1_symbolic(p, d, b), p, d, b);
}

/// Same pipeline for weighted MAX 3-SAT, with O1 assembled clause by clause.
inline Circuit build_cd_circuit_sat(const CnfInstance& c, const DriveSpec& d, const BiasState& b) {
  return trotterize_cd(o1_from_clauses(c, d), cnf_to_hubo(c), d, b);
}

}  // namespace bfdcqo
