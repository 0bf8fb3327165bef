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
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bfdcqo/errors.hpp"
#include "bfdcqo/rng.hpp"

namespace bfdcqo {

using Index = std::uint32_t;
using IndexPair = std::array<Index, 2>;
using IndexTriple = std::array<Index, 3>;

/// Coefficients with magnitude at or below this are treated as cancelled.
inline constexpr double kCoefficientTolerance = 1e-14;

// ---------------------------------------------------------------------------
// SpinAssignment
// ---------------------------------------------------------------------------

/// Ising configuration. Bit 0 maps to spin +1 and bit 1 to spin -1, and
/// qubit 0 is the leftmost character of a bitstring.
class SpinAssignment {
 public:
  SpinAssignment() = default;

  explicit SpinAssignment(std::vector<std::int8_t> spins)
      : spins_(std::move(spins)) {
    for (auto s : spins_)
      if (s != 1 && s != -1)
        throw InvalidArgument("SpinAssignment: entries must be +1 or -1");
  }

  /// All spins +1.
  static SpinAssignment all_up(std::size_t n) {
    return SpinAssignment(std::vector<std::int8_t>(n, 1));
  }

  static SpinAssignment from_bits(std::string_view bits) {
    std::vector<std::int8_t> spins;
    spins.reserve(bits.size());
    for (char c : bits) {
      if (c == '0')
        spins.push_back(1);
      else if (c == '1')
        spins.push_back(-1);
      else
        throw InvalidArgument("bitstring may only contain '0' and '1'");
    }
    return SpinAssignment(std::move(spins));
  }

  std::string to_bits() const {
    std::string bits(spins_.size(), '0');
    for (std::size_t i = 0; i < spins_.size(); ++i)
      if (spins_[i] < 0) bits[i] = '1';
    return bits;
  }

  std::size_t size() const { return spins_.size(); }
  int operator[](std::size_t i) const { return spins_[i]; }
  void flip(std::size_t i) { spins_[i] = static_cast<std::int8_t>(-spins_[i]); }
  const std::vector<std::int8_t>& spins() const { return spins_; }

  SpinAssignment flipped() const {
    SpinAssignment out = *this;
    for (auto& s : out.spins_) s = static_cast<std::int8_t>(-s);
    return out;
  }

  friend bool operator==(const SpinAssignment&, const SpinAssignment&) = default;

 private:
  std::vector<std::int8_t> spins_;
};

inline SpinAssignment assignment_from_bits(std::string_view bits) {
  return SpinAssignment::from_bits(bits);
}

// ---------------------------------------------------------------------------
// HuboProblem
// ---------------------------------------------------------------------------

/// 3-local Ising cost function
///   offset + sum h_i s_i + sum J_ij s_i s_j + sum K_ijk s_i s_j s_k
/// held in canonical sparse form: index tuples strictly increasing, repeated
/// tuples merged on insert, cancelled entries removed.
class HuboProblem {
 public:
  HuboProblem() = default;
  explicit HuboProblem(std::size_t n) : n_(n) {}

  std::size_t n() const { return n_; }
  double offset() const { return offset_; }
  const std::map<Index, double>& linear() const { return linear_; }
  const std::map<IndexPair, double>& quadratic() const { return quadratic_; }
  const std::map<IndexTriple, double>& cubic() const { return cubic_; }

  std::size_t term_count() const {
    return linear_.size() + quadratic_.size() + cubic_.size();
  }
  bool has_terms() const { return term_count() != 0; }

  void add_offset(double v) { offset_ += v; }

  void add_linear(Index i, double v) {
    check_index(i);
    accumulate(linear_, i, v);
  }

  void add_quadratic(Index i, Index j, double v) {
    if (i == j) throw InvalidArgument("quadratic term needs two distinct indices");
    check_index(i);
    check_index(j);
    IndexPair key{std::min(i, j), std::max(i, j)};
    accumulate(quadratic_, key, v);
  }

  void add_cubic(Index i, Index j, Index k, double v) {
    IndexTriple key{i, j, k};
    std::sort(key.begin(), key.end());
    if (key[0] == key[1] || key[1] == key[2])
      throw InvalidArgument("cubic term needs three distinct indices");
    for (auto idx : key) check_index(idx);
    accumulate(cubic_, key, v);
  }

  double h(Index i) const { return lookup(linear_, i); }
  double J(Index i, Index j) const {
    return lookup(quadratic_, IndexPair{std::min(i, j), std::max(i, j)});
  }
  double K(Index i, Index j, Index k) const {
    IndexTriple key{i, j, k};
    std::sort(key.begin(), key.end());
    return lookup(cubic_, key);
  }

  /// Largest (max index - min index) over all stored terms; 0 when there are
  /// no multi-body terms.
  std::size_t max_spread() const {
    std::size_t spread = 0;
    for (const auto& [key, v] : quadratic_) spread = std::max<std::size_t>(spread, key[1] - key[0]);
    for (const auto& [key, v] : cubic_) spread = std::max<std::size_t>(spread, key[2] - key[0]);
    return spread;
  }

  HuboProblem& operator+=(const HuboProblem& other) {
    if (other.n_ != n_) throw DimensionError("HuboProblem sum: size mismatch");
    offset_ += other.offset_;
    for (const auto& [k, v] : other.linear_) accumulate(linear_, k, v);
    for (const auto& [k, v] : other.quadratic_) accumulate(quadratic_, k, v);
    for (const auto& [k, v] : other.cubic_) accumulate(cubic_, k, v);
    return *this;
  }

  friend HuboProblem operator+(HuboProblem a, const HuboProblem& b) { return a += b; }

  HuboProblem scaled(double factor) const {
    HuboProblem out(n_);
    out.offset_ = offset_ * factor;
    for (const auto& [k, v] : linear_) accumulate(out.linear_, k, v * factor);
    for (const auto& [k, v] : quadratic_) accumulate(out.quadratic_, k, v * factor);
    for (const auto& [k, v] : cubic_) accumulate(out.cubic_, k, v * factor);
    return out;
  }

  friend bool operator==(const HuboProblem&, const HuboProblem&) = default;

 private:
  void check_index(Index i) const {
    if (i >= n_) throw InvalidArgument("term index out of range");
  }

  template <typename Map, typename Key>
  static void accumulate(Map& map, const Key& key, double v) {
    if (!std::isfinite(v)) throw InvalidArgument("coefficient must be finite");
    auto [it, inserted] = map.try_emplace(key, v);
    if (!inserted) it->second += v;
    if (std::abs(it->second) <= kCoefficientTolerance) map.erase(it);
  }

  template <typename Map, typename Key>
  static double lookup(const Map& map, const Key& key) {
    auto it = map.find(key);
    return it == map.end() ? 0.0 : it->second;
  }

  std::size_t n_ = 0;
  double offset_ = 0.0;
  std::map<Index, double> linear_;
  std::map<IndexPair, double> quadratic_;
  std::map<IndexTriple, double> cubic_;
};

/// Term-by-term evaluation in canonical order: offset, linear, quadratic,
/// cubic. Every solver reports energies through this function.
inline double energy(const HuboProblem& p, const SpinAssignment& a) {
  if (a.size() != p.n())
    throw DimensionError("energy: assignment length " + std::to_string(a.size()) +
                         " does not match problem size " + std::to_string(p.n()));
  double e = p.offset();
  for (const auto& [i, v] : p.linear()) e += v * a[i];
  for (const auto& [ij, v] : p.quadratic()) e += v * a[ij[0]] * a[ij[1]];
  for (const auto& [ijk, v] : p.cubic()) e += v * a[ijk[0]] * a[ijk[1]] * a[ijk[2]];
  return e;
}

// ---------------------------------------------------------------------------
// CNF
// ---------------------------------------------------------------------------

struct Literal {
  Index var = 0;
  bool negated = false;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
  std::array<Literal, 3> literals{};
  double weight = 1.0;
  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Weighted 3-CNF formula. Duplicate clauses are allowed; their weights
/// act additively.
class CnfInstance {
 public:
  CnfInstance() = default;
  CnfInstance(std::size_t n_vars, std::vector<Clause> clauses)
      : n_vars_(n_vars), clauses_(std::move(clauses)) {
    for (const auto& c : clauses_) validate(c);
  }

  std::size_t n_vars() const { return n_vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  void add_clause(const Clause& c) {
    validate(c);
    clauses_.push_back(c);
  }

  friend bool operator==(const CnfInstance&, const CnfInstance&) = default;

 private:
  void validate(const Clause& c) const {
    const auto& l = c.literals;
    for (const auto& lit : l)
      if (lit.var >= n_vars_) throw InvalidArgument("clause variable out of range");
    if (l[0].var == l[1].var || l[0].var == l[2].var || l[1].var == l[2].var)
      throw InvalidArgument("clause variables must be distinct");
    if (!(c.weight > 0.0) || !std::isfinite(c.weight))
      throw InvalidArgument("clause weight must be strictly positive");
  }

  std::size_t n_vars_ = 0;
  std::vector<Clause> clauses_;
};

/// A literal on variable v is true when s_v == +1 (bit 0), or when s_v == -1
/// for a negated literal.
inline bool literal_true(const Literal& lit, const SpinAssignment& a) {
  return (a[lit.var] > 0) != lit.negated;
}

inline double satisfied_weight(const CnfInstance& c, const SpinAssignment& a) {
  if (a.size() != c.n_vars()) throw DimensionError("satisfied_weight: size mismatch");
  double w = 0.0;
  for (const auto& clause : c.clauses()) {
    const auto& l = clause.literals;
    if (literal_true(l[0], a) || literal_true(l[1], a) || literal_true(l[2], a))
      w += clause.weight;
  }
  return w;
}

/// Sign s_l such that the clause is violated by literal l exactly when
/// s_l * s_var == +1; i.e. (1 + s_l Z)/2 projects onto "literal false".
inline int violation_sign(const Literal& lit) { return lit.negated ? 1 : -1; }

/// Minimisation Hamiltonian of weighted MAX 3-SAT. Each clause contributes
///   -w + (w/8) (I + s_a Z_a)(I + s_b Z_b)(I + s_c Z_c),
/// the negated satisfied-weight indicator, so that for every assignment
/// energy(result, a) == -satisfied_weight(c, a).
inline HuboProblem cnf_to_hubo(const CnfInstance& c) {
  HuboProblem p(c.n_vars());
  for (const auto& clause : c.clauses()) {
    const double w8 = clause.weight / 8.0;
    const auto& l = clause.literals;
    const int s0 = violation_sign(l[0]);
    const int s1 = violation_sign(l[1]);
    const int s2 = violation_sign(l[2]);
    p.add_offset(w8 - clause.weight);
    p.add_linear(l[0].var, w8 * s0);
    p.add_linear(l[1].var, w8 * s1);
    p.add_linear(l[2].var, w8 * s2);
    p.add_quadratic(l[0].var, l[1].var, w8 * s0 * s1);
    p.add_quadratic(l[0].var, l[2].var, w8 * s0 * s2);
    p.add_quadratic(l[1].var, l[2].var, w8 * s1 * s2);
    p.add_cubic(l[0].var, l[1].var, l[2].var, w8 * s0 * s1 * s2);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Nearest-neighbour 3-body chain with i.i.d. standard-normal coefficients.
/// Stream order: h_0..h_{n-1}, J_{i,i+1} for i = 0..n-2, K_{i,i+1,i+2} for
/// i = 0..n-3.
inline HuboProblem gen_nn_spin_glass(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw InvalidArgument("gen_nn_spin_glass: n must be at least 3");
  Rng rng(seed);
  HuboProblem p(n);
  for (std::size_t i = 0; i < n; ++i) p.add_linear(static_cast<Index>(i), rng.normal());
  for (std::size_t i = 0; i + 1 < n; ++i)
    p.add_quadratic(static_cast<Index>(i), static_cast<Index>(i + 1), rng.normal());
  for (std::size_t i = 0; i + 2 < n; ++i)
    p.add_cubic(static_cast<Index>(i), static_cast<Index>(i + 1), static_cast<Index>(i + 2),
                rng.normal());
  return p;
}

inline std::size_t clause_count(std::size_t n_vars, double density) {
  // The small slack absorbs representation error in products such as 25 * 4.3.
  return static_cast<std::size_t>(std::ceil(static_cast<double>(n_vars) * density - 1e-9));
}

/// Random weighted 3-SAT with ceil(n_vars * density) clauses. Per clause the
/// stream is: three distinct variables (redrawn on collision), one negation
/// coin per literal, then the weight in (0, 1] when weighted.
inline CnfInstance gen_max3sat(std::size_t n_vars, double density, bool weighted,
                               std::uint64_t seed) {
  if (n_vars < 3) throw InvalidArgument("gen_max3sat: n_vars must be at least 3");
  if (!(density > 0.0)) throw InvalidArgument("gen_max3sat: density must be positive");
  Rng rng(seed);
  const std::size_t m = clause_count(n_vars, density);
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    Clause clause;
    std::array<Index, 3> vars{};
    for (std::size_t k = 0; k < 3; ++k) {
      Index v;
      do {
        v = static_cast<Index>(rng.below(n_vars));
      } while (std::find(vars.begin(), vars.begin() + k, v) != vars.begin() + k);
      vars[k] = v;
    }
    for (std::size_t k = 0; k < 3; ++k) clause.literals[k] = {vars[k], rng.coin()};
    clause.weight = weighted ? rng.uniform_open_closed() : 1.0;
    clauses.push_back(clause);
  }
  return CnfInstance(n_vars, std::move(clauses));
}

/// Chain variant: one clause on (i, i+1, i+2) for every i, random negations
/// and optional weights, in that stream order.
inline CnfInstance gen_max3sat_nn(std::size_t n_vars, bool weighted, std::uint64_t seed) {
  if (n_vars < 3) throw InvalidArgument("gen_max3sat_nn: n_vars must be at least 3");
  Rng rng(seed);
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i + 2 < n_vars; ++i) {
    Clause clause;
    for (std::size_t k = 0; k < 3; ++k)
      clause.literals[k] = {static_cast<Index>(i + k), rng.coin()};
    clause.weight = weighted ? rng.uniform_open_closed() : 1.0;
    clauses.push_back(clause);
  }
  return CnfInstance(n_vars, std::move(clauses));
}

}  // namespace bfdcqo
