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

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bfdcqo/cd.hpp"
#include "bfdcqo/errors.hpp"
#include "bfdcqo/pauli.hpp"
#include "bfdcqo/rng.hpp"
#include "bfdcqo/samples.hpp"

namespace bfdcqo {

inline constexpr std::size_t kDefaultMaxQubits = 24;

/// Dense 2^n amplitude vector. Qubit q is bit (n - 1 - q) of the basis
/// index, so qubit 0 is the most significant bit and the leftmost character
/// of a bitstring.
class StateVector {
 public:
  explicit StateVector(std::size_t n, std::size_t max_qubits = kDefaultMaxQubits) : n_(n) {
    if (n > max_qubits)
      throw SizeLimitError("StateVector: " + std::to_string(n) + " qubits exceeds cap of " +
                           std::to_string(max_qubits));
    amps_.assign(std::size_t{1} << n, Complex{});
    amps_[0] = 1.0;
  }

  static StateVector from_amplitudes(std::vector<Complex> amps) {
    if (amps.empty() || !std::has_single_bit(amps.size()))
      throw DimensionError("StateVector: amplitude count must be a power of two");
    StateVector s(static_cast<std::size_t>(std::countr_zero(amps.size())), 63);
    s.amps_ = std::move(amps);
    return s;
  }

  std::size_t n() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  std::size_t bit_of(Index qubit) const { return n_ - 1 - qubit; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  /// Applies exp(-i theta/2 P) in place. P|y> = w(y)|y ^ xmask> with
  /// w(y) = i^{#Y} (-1)^{popcount(y & zmask)}.
  void apply_rotation(const PauliString& p, double theta) {
    if (p.n() != n_) throw DimensionError("apply_rotation: register size mismatch");
    if (theta == 0.0 || p.is_identity()) {
      if (p.is_identity()) {
        const Complex phase = std::polar(1.0, -theta / 2.0);
        for (auto& a : amps_) a *= phase;
      }
      return;
    }
    std::uint64_t xmask = 0;
    std::uint64_t zmask = 0;
    int ny = 0;
    for (const auto& [q, op] : p.ops()) {
      const std::uint64_t bit = std::uint64_t{1} << bit_of(q);
      if (op == Pauli::X || op == Pauli::Y) xmask |= bit;
      if (op == Pauli::Z || op == Pauli::Y) zmask |= bit;
      if (op == Pauli::Y) ++ny;
    }
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex iy = kIPow[ny % 4];
    const auto weight = [&](std::uint64_t y) {
      return (std::popcount(y & zmask) % 2 == 0) ? iy : -iy;
    };
    const double c = std::cos(theta / 2.0);
    const Complex mis(0.0, -std::sin(theta / 2.0));
    const std::uint64_t dim = amps_.size();
    if (xmask == 0) {
      for (std::uint64_t y = 0; y < dim; ++y) amps_[y] *= c + mis * weight(y);
      return;
    }
    for (std::uint64_t y = 0; y < dim; ++y) {
      const std::uint64_t partner = y ^ xmask;
      if (partner < y) continue;
      const Complex a0 = amps_[y];
      const Complex a1 = amps_[partner];
      amps_[y] = c * a0 + mis * weight(partner) * a1;
      amps_[partner] = c * a1 + mis * weight(y) * a0;
    }
  }

  std::string bitstring(std::uint64_t index) const {
    std::string bits(n_, '0');
    for (std::size_t q = 0; q < n_; ++q)
      if ((index >> bit_of(static_cast<Index>(q))) & 1U) bits[q] = '1';
    return bits;
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> amps_;
};

/// Product state (x) Ry(theta_q)|0>, per-qubit amplitudes (cos, sin)(theta/2).
inline StateVector prepare(const std::vector<double>& prep_angles,
                           std::size_t max_qubits = kDefaultMaxQubits) {
  const std::size_t n = prep_angles.size();
  StateVector s(n, max_qubits);
  auto amps = s.amplitudes();
  for (std::uint64_t y = 0; y < amps.size(); ++y) {
    double a = 1.0;
    for (std::size_t q = 0; q < n; ++q) {
      const double half = prep_angles[q] / 2.0;
      a *= ((y >> s.bit_of(static_cast<Index>(q))) & 1U) ? std::sin(half) : std::cos(half);
    }
    amps[y] = a;
  }
  return s;
}

inline StateVector apply_pauli_rotation(StateVector s, const PauliString& p, double theta) {
  s.apply_rotation(p, theta);
  return s;
}

inline StateVector run_circuit(const Circuit& c, std::size_t max_qubits = kDefaultMaxQubits) {
  if (c.prep_angles.size() != c.n) throw DimensionError("run_circuit: prep layer size mismatch");
  StateVector s = prepare(c.prep_angles, max_qubits);
  for (const auto& r : c.rotations) s.apply_rotation(r.pauli, r.theta);
  return s;
}

/// Inverse-CDF sampling from |amplitude|^2.
inline SampleSet sample(const StateVector& s, std::uint64_t n_shots, std::uint64_t seed) {
  if (n_shots < 1) throw InvalidArgument("sample: n_shots must be at least 1");
  const auto amps = s.amplitudes();
  std::vector<double> cdf(amps.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    acc += std::norm(amps[i]);
    cdf[i] = acc;
  }
  Rng rng(seed);
  std::map<std::uint64_t, std::uint64_t> hits;
  for (std::uint64_t shot = 0; shot < n_shots; ++shot) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++hits[static_cast<std::uint64_t>(it - cdf.begin())];
  }
  std::map<std::string, std::uint64_t> counts;
  for (const auto& [idx, c] : hits) counts[s.bitstring(idx)] += c;
  return SampleSet::from_counts(s.n(), counts);
}

/// <Z_q> for every qubit.
inline std::vector<double> exact_expectations(const StateVector& s) {
  std::vector<double> z(s.n(), 0.0);
  const auto amps = s.amplitudes();
  for (std::uint64_t y = 0; y < amps.size(); ++y) {
    const double pr = std::norm(amps[y]);
    if (pr == 0.0) continue;
    for (std::size_t q = 0; q < s.n(); ++q)
      z[q] += ((y >> s.bit_of(static_cast<Index>(q))) & 1U) ? -pr : pr;
  }
  return z;
}

/// <H_f> from the amplitudes.
inline double expectation(const StateVector& s, const HuboProblem& p) {
  if (p.n() != s.n()) throw DimensionError("expectation: size mismatch");
  const auto amps = s.amplitudes();
  double e = 0.0;
  for (std::uint64_t y = 0; y < amps.size(); ++y) {
    const double pr = std::norm(amps[y]);
    if (pr == 0.0) continue;
    e += pr * energy(p, SpinAssignment::from_bits(s.bitstring(y)));
  }
  return e;
}

/// Debug dump: little-endian float32 (re, im) pairs in basis-index order.
inline void dump_state(const StateVector& s, const std::string& path) {
  static_assert(std::endian::native == std::endian::little,
                "dump_state assumes a little-endian host");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("dump_state: cannot open " + path);
  for (const auto& a : s.amplitudes()) {
    const float pair[2] = {static_cast<float>(a.real()), static_cast<float>(a.imag())};
    out.write(reinterpret_cast<const char*>(pair), sizeof(pair));
  }
}

}  // namespace bfdcqo
