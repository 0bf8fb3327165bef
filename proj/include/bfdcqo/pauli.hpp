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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bfdcqo/errors.hpp"
#include "bfdcqo/hubo.hpp"

namespace bfdcqo {

using Complex = std::complex<double>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw InvalidArgument(std::string("unknown Pauli symbol '") + c + "'");
  }
}

/// Single-qubit product a*b = phase * result.
inline std::pair<Complex, Pauli> pauli_mul(Pauli a, Pauli b) {
  if (a == Pauli::I) return {1.0, b};
  if (b == Pauli::I) return {1.0, a};
  if (a == b) return {1.0, Pauli::I};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const auto third = static_cast<Pauli>(6 - ia - ib);
  // cyclic X->Y->Z->X gives +i
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? Complex(0, 1) : Complex(0, -1), third};
}

/// Tensor product of single-qubit Paulis on an n-qubit register, stored as
/// a sparse list of (qubit, non-identity Pauli) sorted by qubit. The empty
/// list is the identity.
class PauliString {
 public:
  using Entry = std::pair<Index, Pauli>;

  PauliString() = default;
  explicit PauliString(std::size_t n) : n_(n) {}

  PauliString(std::size_t n, std::vector<Entry> ops) : n_(n), ops_(std::move(ops)) {
    canonicalize();
  }

  PauliString(std::size_t n, std::initializer_list<Entry> ops)
      : PauliString(n, std::vector<Entry>(ops)) {}

  static PauliString single(std::size_t n, Index q, Pauli p) {
    return PauliString(n, {{q, p}});
  }

  /// Parses "XIZY"-style dense strings, qubit 0 first.
  static PauliString parse(std::string_view dense) {
    std::vector<Entry> ops;
    for (std::size_t q = 0; q < dense.size(); ++q) {
      const Pauli p = pauli_from_char(dense[q]);
      if (p != Pauli::I) ops.emplace_back(static_cast<Index>(q), p);
    }
    return PauliString(dense.size(), std::move(ops));
  }

  std::size_t n() const { return n_; }
  const std::vector<Entry>& ops() const { return ops_; }
  std::size_t weight() const { return ops_.size(); }
  bool is_identity() const { return ops_.empty(); }

  Pauli at(Index q) const {
    auto it = std::lower_bound(ops_.begin(), ops_.end(), q,
                               [](const Entry& e, Index v) { return e.first < v; });
    return (it != ops_.end() && it->first == q) ? it->second : Pauli::I;
  }

  /// Support span: max qubit - min qubit + 1, or 0 for the identity.
  std::size_t span() const {
    return ops_.empty() ? 0 : ops_.back().first - ops_.front().first + 1;
  }

  bool is_diagonal() const {
    return std::all_of(ops_.begin(), ops_.end(),
                       [](const Entry& e) { return e.second == Pauli::Z; });
  }

  std::string str() const {
    std::string s(n_, 'I');
    for (const auto& [q, p] : ops_) s[q] = pauli_char(p);
    return s;
  }

  /// True when the two strings anticommute.
  bool anticommutes(const PauliString& other) const {
    std::size_t clashes = 0;
    auto a = ops_.begin();
    auto b = other.ops_.begin();
    while (a != ops_.end() && b != other.ops_.end()) {
      if (a->first < b->first) {
        ++a;
      } else if (b->first < a->first) {
        ++b;
      } else {
        if (a->second != b->second) ++clashes;
        ++a;
        ++b;
      }
    }
    return clashes % 2 == 1;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  void canonicalize() {
    std::sort(ops_.begin(), ops_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      if (ops_[i].first >= n_) throw InvalidArgument("Pauli qubit index out of range");
      if (i > 0 && ops_[i].first == ops_[i - 1].first)
        throw InvalidArgument("Pauli string repeats a qubit");
    }
    std::erase_if(ops_, [](const Entry& e) { return e.second == Pauli::I; });
  }

  std::size_t n_ = 0;
  std::vector<Entry> ops_;
};

/// a*b = phase * string.
inline std::pair<Complex, PauliString> pauli_mul(const PauliString& a, const PauliString& b) {
  if (a.n() != b.n()) throw DimensionError("pauli_mul: register size mismatch");
  Complex phase = 1.0;
  std::vector<PauliString::Entry> out;
  out.reserve(a.ops().size() + b.ops().size());
  auto ia = a.ops().begin();
  auto ib = b.ops().begin();
  while (ia != a.ops().end() || ib != b.ops().end()) {
    if (ib == b.ops().end() || (ia != a.ops().end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.ops().end() || ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      auto [ph, p] = pauli_mul(ia->second, ib->second);
      phase *= ph;
      if (p != Pauli::I) out.emplace_back(ia->first, p);
      ++ia;
      ++ib;
    }
  }
  return {phase, PauliString(a.n(), std::move(out))};
}

/// Sparse complex linear combination of Pauli strings.
class PauliSum {
 public:
  using Terms = std::map<PauliString, Complex>;

  PauliSum() = default;
  explicit PauliSum(std::size_t n) : n_(n) {}

  std::size_t n() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Complex coefficient(const PauliString& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Complex{} : it->second;
  }

  /// Adds c*p, dropping the entry if the result cancels below tolerance.
  void add(const PauliString& p, Complex c) {
    if (p.n() != n_) throw DimensionError("PauliSum::add: register size mismatch");
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) <= kCoefficientTolerance) terms_.erase(it);
  }

  PauliSum& operator+=(const PauliSum& other) {
    if (other.n_ != n_) throw DimensionError("PauliSum sum: register size mismatch");
    for (const auto& [p, c] : other.terms_) add(p, c);
    return *this;
  }
  PauliSum& operator-=(const PauliSum& other) { return *this += other * Complex(-1.0); }

  PauliSum operator*(Complex s) const {
    PauliSum out(n_);
    for (const auto& [p, c] : terms_) out.add(p, c * s);
    return out;
  }

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }

  friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    if (a.n_ != b.n_) throw DimensionError("PauliSum product: register size mismatch");
    PauliSum out(a.n_);
    for (const auto& [pa, ca] : a.terms_)
      for (const auto& [pb, cb] : b.terms_) {
        auto [phase, p] = pauli_mul(pa, pb);
        out.add(p, phase * ca * cb);
      }
    return out;
  }

  /// Sum of |c|^2, i.e. Tr[O^dagger O] / 2^n for orthonormal strings.
  double norm_squared() const {
    double s = 0.0;
    for (const auto& [p, c] : terms_) s += std::norm(c);
    return s;
  }

  bool is_hermitian(double tol = 1e-12) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return std::abs(t.second.imag()) <= tol; });
  }

  bool is_anti_hermitian(double tol = 1e-12) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return std::abs(t.second.real()) <= tol; });
  }

  friend bool operator==(const PauliSum&, const PauliSum&) = default;

 private:
  std::size_t n_ = 0;
  Terms terms_;
};

/// [a, b] = ab - ba. Only anticommuting string pairs contribute, each as
/// 2 * (product); candidate pairs are found through shared qubits.
inline PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  if (a.n() != b.n()) throw DimensionError("commutator: register size mismatch");
  std::vector<std::pair<const PauliString*, Complex>> bterms;
  bterms.reserve(b.size());
  for (const auto& [p, c] : b.terms()) bterms.emplace_back(&p, c);
  std::vector<std::vector<std::size_t>> by_qubit(a.n());
  for (std::size_t t = 0; t < bterms.size(); ++t)
    for (const auto& [q, op] : bterms[t].first->ops()) by_qubit[q].push_back(t);

  PauliSum out(a.n());
  std::vector<std::size_t> candidates;
  for (const auto& [pa, ca] : a.terms()) {
    candidates.clear();
    for (const auto& [q, op] : pa.ops())
      candidates.insert(candidates.end(), by_qubit[q].begin(), by_qubit[q].end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (std::size_t t : candidates) {
      const auto& [pb, cb] = bterms[t];
      if (!pa.anticommutes(*pb)) continue;
      auto [phase, p] = pauli_mul(pa, *pb);
      out.add(p, 2.0 * phase * ca * cb);
    }
  }
  return out;
}

/// Diagonal Pauli-Z expansion of a cost function (offset becomes the
/// identity coefficient).
inline PauliSum hubo_to_pauli(const HuboProblem& p) {
  const std::size_t n = p.n();
  PauliSum out(n);
  if (p.offset() != 0.0) out.add(PauliString(n), p.offset());
  for (const auto& [i, v] : p.linear()) out.add(PauliString(n, {{i, Pauli::Z}}), v);
  for (const auto& [ij, v] : p.quadratic())
    out.add(PauliString(n, {{ij[0], Pauli::Z}, {ij[1], Pauli::Z}}), v);
  for (const auto& [ijk, v] : p.cubic())
    out.add(PauliString(n, {{ijk[0], Pauli::Z}, {ijk[1], Pauli::Z}, {ijk[2], Pauli::Z}}), v);
  return out;
}

}  // namespace bfdcqo
