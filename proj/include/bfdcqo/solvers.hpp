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
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bfdcqo/errors.hpp"
#include "bfdcqo/hubo.hpp"
#include "bfdcqo/parallel.hpp"
#include "bfdcqo/rng.hpp"

namespace bfdcqo {

inline constexpr std::size_t kBruteForceMaxSpins = 24;
inline constexpr std::size_t kDpMaxRange = 20;

struct BruteForceResult {
  double e0 = 0.0;
  std::vector<SpinAssignment> argmins;  // ascending by bitstring
};

struct SolverResult {
  double energy = 0.0;
  SpinAssignment assignment;
};

namespace detail {

/// Per-site adjacency for fast single-flip energy differences. The local
/// field f_i satisfies E(s) = (terms without i) + s_i f_i, so flipping i
/// changes the energy by -2 s_i f_i.
class FlipModel {
 public:
  struct Pair {
    Index j;
    double v;
  };
  struct Triple {
    Index j;
    Index k;
    double v;
  };

  explicit FlipModel(const HuboProblem& p)
      : n_(p.n()), h_(p.n(), 0.0), pairs_(p.n()), triples_(p.n()) {
    for (const auto& [i, v] : p.linear()) h_[i] = v;
    for (const auto& [ij, v] : p.quadratic()) {
      pairs_[ij[0]].push_back({ij[1], v});
      pairs_[ij[1]].push_back({ij[0], v});
    }
    for (const auto& [t, v] : p.cubic()) {
      triples_[t[0]].push_back({t[1], t[2], v});
      triples_[t[1]].push_back({t[0], t[2], v});
      triples_[t[2]].push_back({t[0], t[1], v});
    }
  }

  std::size_t n() const { return n_; }

  double field(const std::vector<std::int8_t>& s, Index i) const {
    double f = h_[i];
    for (const auto& e : pairs_[i]) f += e.v * s[e.j];
    for (const auto& e : triples_[i]) f += e.v * s[e.j] * s[e.k];
    return f;
  }

  void init_fields(const std::vector<std::int8_t>& s, std::vector<double>& f) const {
    f.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) f[i] = field(s, static_cast<Index>(i));
  }

  /// Flips spin i and updates the cached fields of its neighbours.
  void flip(std::vector<std::int8_t>& s, std::vector<double>& f, Index i) const {
    const double ds = -2.0 * s[i];
    for (const auto& e : pairs_[i]) f[e.j] += e.v * ds;
    for (const auto& e : triples_[i]) {
      f[e.j] += e.v * ds * s[e.k];
      f[e.k] += e.v * ds * s[e.j];
    }
    s[i] = static_cast<std::int8_t>(-s[i]);
  }

 private:
  std::size_t n_;
  std::vector<double> h_;
  std::vector<std::vector<Pair>> pairs_;
  std::vector<std::vector<Triple>> triples_;
};

inline std::vector<std::int8_t> random_spins(std::size_t n, Rng& rng) {
  std::vector<std::int8_t> s(n);
  for (auto& v : s) v = rng.coin() ? -1 : 1;
  return s;
}

/// Sum of |coefficients|; sets the scale of floating-point tolerances.
inline double coefficient_scale(const HuboProblem& p) {
  double s = std::abs(p.offset());
  for (const auto& [k, v] : p.linear()) s += std::abs(v);
  for (const auto& [k, v] : p.quadratic()) s += std::abs(v);
  for (const auto& [k, v] : p.cubic()) s += std::abs(v);
  return s;
}

/// Best of per-read results; ties go to the lowest read index so the outcome
/// does not depend on the thread count.
inline SolverResult reduce_reads(const HuboProblem& p, std::vector<std::vector<std::int8_t>>& finals) {
  SolverResult best;
  bool first = true;
  for (auto& s : finals) {
    SpinAssignment a(std::move(s));
    const double e = energy(p, a);
    if (first || e < best.energy) {
      best = {e, std::move(a)};
      first = false;
    }
  }
  return best;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact solvers
// ---------------------------------------------------------------------------

/// Exhaustive minimum over all 2^n assignments in Gray-code order. Every
/// assignment within floating-point noise of the running minimum is kept,
/// then E0 and the argmin set are fixed by canonical energy() evaluation.
inline BruteForceResult brute_force(const HuboProblem& p,
                                    std::size_t max_spins = kBruteForceMaxSpins) {
  const std::size_t n = p.n();
  if (n == 0) throw InvalidArgument("brute_force: empty problem");
  if (n > max_spins)
    throw SizeLimitError("brute_force: n = " + std::to_string(n) + " exceeds limit " +
                         std::to_string(max_spins));
  const detail::FlipModel model(p);
  const double tol = 1e-9 * (1.0 + detail::coefficient_scale(p));

  std::vector<std::int8_t> s(n, 1);
  double e = energy(p, SpinAssignment(s));
  double best = e;
  std::vector<std::uint32_t> candidates{0};
  std::uint32_t code = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto bit = static_cast<Index>(std::countr_zero(step));
    e += -2.0 * s[bit] * model.field(s, bit);
    s[bit] = static_cast<std::int8_t>(-s[bit]);
    code ^= std::uint32_t{1} << bit;
    if (e < best - tol) {
      best = e;
      candidates.clear();
      candidates.push_back(code);
    } else if (e <= best + tol) {
      best = std::min(best, e);
      candidates.push_back(code);
    }
  }

  auto decode = [n](std::uint32_t c) {
    std::vector<std::int8_t> spins(n);
    for (std::size_t q = 0; q < n; ++q) spins[q] = ((c >> q) & 1U) ? -1 : 1;
    return SpinAssignment(std::move(spins));
  };
  BruteForceResult out;
  out.e0 = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, SpinAssignment>> scored;
  scored.reserve(candidates.size());
  for (auto c : candidates) {
    SpinAssignment a = decode(c);
    const double ea = energy(p, a);
    out.e0 = std::min(out.e0, ea);
    scored.emplace_back(ea, std::move(a));
  }
  const double keep = 1e-12 * (1.0 + detail::coefficient_scale(p));
  for (auto& [ea, a] : scored)
    if (ea <= out.e0 + keep) out.argmins.push_back(std::move(a));
  std::sort(out.argmins.begin(), out.argmins.end(),
            [](const SpinAssignment& x, const SpinAssignment& y) { return x.to_bits() < y.to_bits(); });
  return out;
}

enum class DpMode {
  /// Minimum prefix energy for every boundary configuration; exact.
  boundary_states,
  /// Keeps a single surviving configuration per step; a heuristic.
  single_survivor,
};

/// Ground state of a chain whose couplings all have index spread < r.
/// Each term is charged to the step of its largest index, so the per-step
/// increments telescope to the total energy.
inline SolverResult exact_dp(const HuboProblem& p, std::size_t r,
                             DpMode mode = DpMode::boundary_states) {
  const std::size_t n = p.n();
  if (n == 0) throw InvalidArgument("exact_dp: empty problem");
  if (r < 1 || r > kDpMaxRange)
    throw InvalidArgument("exact_dp: range must lie in [1, " + std::to_string(kDpMaxRange) + "]");
  if (p.max_spread() >= r)
    throw RangeViolation("exact_dp: coupling spread " + std::to_string(p.max_spread()) +
                         " needs range at least " + std::to_string(p.max_spread() + 1));

  // Terms grouped by largest index, stored as offsets back from that index.
  struct Term {
    std::array<std::uint32_t, 3> back;
    std::uint32_t order;
    double v;
  };
  std::vector<std::vector<Term>> by_site(n);
  for (const auto& [i, v] : p.linear()) by_site[i].push_back({{0, 0, 0}, 1, v});
  for (const auto& [ij, v] : p.quadratic())
    by_site[ij[1]].push_back({{0, ij[1] - ij[0], 0}, 2, v});
  for (const auto& [t, v] : p.cubic())
    by_site[t[2]].push_back({{0, t[2] - t[1], t[2] - t[0]}, 3, v});

  // Window bit b holds the spin at index (i - b); bit set means spin -1.
  auto increment = [&](std::size_t i, std::uint32_t window) {
    double d = 0.0;
    for (const auto& t : by_site[i]) {
      double prod = t.v;
      for (std::uint32_t k = 0; k < t.order; ++k)
        if ((window >> t.back[k]) & 1U) prod = -prod;
      d += prod;
    }
    return d;
  };

  std::vector<std::int8_t> spins(n, 1);
  if (mode == DpMode::single_survivor) {
    std::uint32_t window = 0;
    const std::uint32_t mask = (r >= 32) ? ~0U : ((1U << r) - 1U);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t up = (window << 1) & mask;
      const std::uint32_t down = up | 1U;
      window = increment(i, down) < increment(i, up) ? down : up;
      spins[i] = (window & 1U) ? -1 : 1;
    }
  } else {
    const std::size_t states = std::size_t{1} << (r - 1);
    const std::uint32_t state_mask = static_cast<std::uint32_t>(states - 1);
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(states, inf), next(states);
    cost[0] = 0.0;  // indices before the chain are pinned to +1
    std::vector<std::vector<std::uint8_t>> dropped(n, std::vector<std::uint8_t>(states, 0));
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(next.begin(), next.end(), inf);
      for (std::uint32_t prev = 0; prev < states; ++prev) {
        if (cost[prev] == inf) continue;
        for (std::uint32_t b = 0; b < 2; ++b) {
          const std::uint32_t window = (prev << 1) | b;
          const double c = cost[prev] + increment(i, window);
          const std::uint32_t state = window & state_mask;
          if (c < next[state]) {
            next[state] = c;
            dropped[i][state] = static_cast<std::uint8_t>((window >> (r - 1)) & 1U);
          }
        }
      }
      cost.swap(next);
    }
    std::uint32_t state = static_cast<std::uint32_t>(
        std::min_element(cost.begin(), cost.end()) - cost.begin());
    for (std::size_t i = n; i-- > 0;) {
      const std::uint32_t window =
          state | (static_cast<std::uint32_t>(dropped[i][state]) << (r - 1));
      spins[i] = (window & 1U) ? -1 : 1;
      state = window >> 1;
    }
  }
  SpinAssignment a(std::move(spins));
  const double e = energy(p, a);
  return {e, std::move(a)};
}

/// Smallest DP range that covers p.
inline std::size_t dp_range(const HuboProblem& p) { return p.max_spread() + 1; }

struct ReferenceSolution {
  double e0 = 0.0;
  std::string bits;
  std::string method;
};

/// Exact ground energy by the cheapest applicable method, or nothing when
/// neither the DP nor enumeration is affordable.
inline std::optional<ReferenceSolution> exact_reference(const HuboProblem& p) {
  if (p.n() == 0) return std::nullopt;
  if (dp_range(p) <= kDpMaxRange) {
    auto r = exact_dp(p, dp_range(p));
    return ReferenceSolution{r.energy, r.assignment.to_bits(), "exact_dp"};
  }
  if (p.n() <= kBruteForceMaxSpins) {
    auto r = brute_force(p);
    return ReferenceSolution{r.e0, r.argmins.front().to_bits(), "brute_force"};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Heuristics
// ---------------------------------------------------------------------------

enum class SiteOrder { sequential, random };

struct AnnealParams {
  std::size_t reads = 1000;
  std::size_t sweeps = 1000;
  double t_initial = 2.0;
  double t_final = 0.05;
  SiteOrder order = SiteOrder::sequential;

  void validate() const {
    if (reads < 1 || sweeps < 1) throw InvalidArgument("AnnealParams: reads and sweeps must be >= 1");
    if (!(t_final > 0.0) || !(t_initial >= t_final))
      throw InvalidArgument("AnnealParams: need t_initial >= t_final > 0");
  }

  /// Geometric schedule T_k = T_i (T_f / T_i)^(k / (sweeps - 1)).
  double temperature(std::size_t k) const {
    if (sweeps == 1) return t_initial;
    const double x = static_cast<double>(k) / static_cast<double>(sweeps - 1);
    return t_initial * std::pow(t_final / t_initial, x);
  }
};

/// Single-spin-flip Metropolis annealing. Read r draws from its own stream
/// seeded with mix_seed(seed, r); reads run in parallel.
inline SolverResult simulated_annealing(const HuboProblem& p, const AnnealParams& params,
                                        std::uint64_t seed) {
  params.validate();
  if (p.n() == 0) throw InvalidArgument("simulated_annealing: empty problem");
  const detail::FlipModel model(p);
  const std::size_t n = p.n();
  std::vector<std::vector<std::int8_t>> finals(params.reads);
  parallel_for(params.reads, [&](std::size_t read) {
    Rng rng(mix_seed(seed, read));
    auto s = detail::random_spins(n, rng);
    std::vector<double> f;
    model.init_fields(s, f);
    double e = 0.0;
    double best_e = 0.0;
    auto best = s;
    std::vector<Index> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Index>(i);
    for (std::size_t k = 0; k < params.sweeps; ++k) {
      const double beta = 1.0 / params.temperature(k);
      if (params.order == SiteOrder::random)
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      for (Index i : order) {
        const double de = -2.0 * s[i] * f[i];
        if (de <= 0.0 || rng.uniform() < std::exp(-beta * de)) {
          model.flip(s, f, i);
          e += de;
          if (e < best_e) {
            best_e = e;
            best = s;
          }
        }
      }
    }
    finals[read] = std::move(best);
  });
  return detail::reduce_reads(p, finals);
}

/// Zero-temperature Metropolis: sequential sweeps accepting dE <= 0 until a
/// sweep makes no strict improvement or the sweep budget is spent, then
/// strict first-improvement descent until no single flip lowers the energy.
inline SolverResult local_search(const HuboProblem& p, std::size_t reads, std::size_t sweeps,
                                 std::uint64_t seed) {
  if (reads < 1 || sweeps < 1) throw InvalidArgument("local_search: reads and sweeps must be >= 1");
  if (p.n() == 0) throw InvalidArgument("local_search: empty problem");
  const detail::FlipModel model(p);
  const std::size_t n = p.n();
  const double tol = 1e-12 * (1.0 + detail::coefficient_scale(p));
  std::vector<std::vector<std::int8_t>> finals(reads);
  parallel_for(reads, [&](std::size_t read) {
    Rng rng(mix_seed(seed, read));
    auto s = detail::random_spins(n, rng);
    std::vector<double> f;
    model.init_fields(s, f);
    for (std::size_t k = 0; k < sweeps; ++k) {
      bool improved = false;
      for (std::size_t i = 0; i < n; ++i) {
        const double de = -2.0 * s[i] * f[i];
        if (de <= 0.0) {
          if (de < -tol) improved = true;
          model.flip(s, f, static_cast<Index>(i));
        }
      }
      if (!improved) break;
    }
    for (bool improved = true; improved;) {
      improved = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (-2.0 * s[i] * f[i] < -tol) {
          model.flip(s, f, static_cast<Index>(i));
          improved = true;
        }
      }
    }
    finals[read] = std::move(s);
  });
  return detail::reduce_reads(p, finals);
}

struct TabuParams {
  std::size_t reads = 100;
  std::size_t tenure = 10;
  std::size_t max_stagnation = 100;

  void validate() const {
    if (reads < 1 || max_stagnation < 1)
      throw InvalidArgument("TabuParams: reads and max_stagnation must be >= 1");
  }
};

/// Steepest single-flip tabu search. A flipped spin stays tabu for `tenure`
/// moves unless the move reaches a new best for the read (aspiration); a
/// read ends after max_stagnation consecutive moves without a new best.
inline SolverResult tabu_search(const HuboProblem& p, const TabuParams& params, std::uint64_t seed) {
  params.validate();
  if (p.n() == 0) throw InvalidArgument("tabu_search: empty problem");
  const detail::FlipModel model(p);
  const std::size_t n = p.n();
  const double tol = 1e-12 * (1.0 + detail::coefficient_scale(p));
  std::vector<std::vector<std::int8_t>> finals(params.reads);
  parallel_for(params.reads, [&](std::size_t read) {
    Rng rng(mix_seed(seed, read));
    auto s = detail::random_spins(n, rng);
    std::vector<double> f;
    model.init_fields(s, f);
    std::vector<std::size_t> tabu_until(n, 0);
    double e = 0.0;
    double best_e = 0.0;
    auto best = s;
    std::size_t stagnation = 0;
    for (std::size_t step = 1; stagnation < params.max_stagnation; ++step) {
      std::size_t pick = n;
      std::size_t fallback = 0;
      double pick_de = std::numeric_limits<double>::infinity();
      double fallback_de = pick_de;
      for (std::size_t i = 0; i < n; ++i) {
        const double de = -2.0 * s[i] * f[i];
        if (de < fallback_de) {
          fallback_de = de;
          fallback = i;
        }
        const bool allowed = step > tabu_until[i] || e + de < best_e - tol;
        if (allowed && de < pick_de) {
          pick_de = de;
          pick = i;
        }
      }
      if (pick == n) {
        pick = fallback;
        pick_de = fallback_de;
      }
      model.flip(s, f, static_cast<Index>(pick));
      e += pick_de;
      tabu_until[pick] = step + params.tenure;
      if (e < best_e - tol) {
        best_e = e;
        best = s;
        stagnation = 0;
      } else {
        ++stagnation;
      }
    }
    finals[read] = std::move(best);
  });
  return detail::reduce_reads(p, finals);
}

}  // namespace bfdcqo
