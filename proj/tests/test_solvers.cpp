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

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace bfdcqo;

namespace {

bool is_one_flip_optimal(const HuboProblem& p, const SpinAssignment& a) {
  const double e = energy(p, a);
  for (std::size_t i = 0; i < p.n(); ++i) {
    auto b = a;
    b.flip(i);
    if (energy(p, b) < e - 1e-9) return false;
  }
  return true;
}

/// Zero-temperature sweeps written against full energy recomputation, with
/// the same random stream layout as the library implementation.
SolverResult greedy_descent(const HuboProblem& p, std::size_t reads, std::size_t sweeps,
                            std::uint64_t seed) {
  SolverResult best{std::numeric_limits<double>::infinity(), {}};
  for (std::size_t r = 0; r < reads; ++r) {
    Rng rng(mix_seed(seed, r));
    std::vector<std::int8_t> s(p.n());
    for (auto& v : s) v = rng.coin() ? -1 : 1;
    SpinAssignment a(s);
    double e = oracle::energy(p, std::vector<int>(s.begin(), s.end()));
    auto full = [&](const SpinAssignment& x) {
      return oracle::energy(p, std::vector<int>(x.spins().begin(), x.spins().end()));
    };
    for (std::size_t k = 0; k < sweeps; ++k) {
      bool improved = false;
      for (std::size_t i = 0; i < p.n(); ++i) {
        auto b = a;
        b.flip(i);
        const double eb = full(b);
        if (eb <= e) {
          if (eb < e - 1e-9) improved = true;
          a = b;
          e = eb;
        }
      }
      if (!improved) break;
    }
    for (bool improved = true; improved;) {
      improved = false;
      for (std::size_t i = 0; i < p.n(); ++i) {
        auto b = a;
        b.flip(i);
        const double eb = full(b);
        if (eb < e - 1e-9) {
          a = b;
          e = eb;
          improved = true;
        }
      }
    }
    const double canonical = energy(p, a);
    if (canonical < best.energy) best = {canonical, a};
  }
  return best;
}

}  // namespace

TEST(BruteForce, Examples) {
  HuboProblem p(1);
  p.add_linear(0, -1.0);
  const auto r = brute_force(p);
  EXPECT_EQ(r.e0, -1.0);
  ASSERT_EQ(r.argmins.size(), 1u);
  EXPECT_EQ(r.argmins[0].to_bits(), "0");

  CnfInstance c(3, {Clause{{Literal{0}, Literal{1}, Literal{2}}, 1.0}});
  const auto sat = brute_force(cnf_to_hubo(c));
  EXPECT_NEAR(sat.e0, -1.0, 1e-15);
  EXPECT_EQ(sat.argmins.size(), 7u);
  EXPECT_THROW(brute_force(HuboProblem(25)), SizeLimitError);
}

TEST(BruteForce, MatchesFullEnumeration) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = oracle::random_hubo(9, seed);
    const auto ref = oracle::enumerate(p);
    const auto r = brute_force(p);
    EXPECT_NEAR(r.e0, ref.e0, 1e-12);
    EXPECT_EQ(energy(p, r.argmins[0]), r.e0);
  }
}

TEST(ExactDp, DegeneratesToEnumeration) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = oracle::random_hubo(3, seed, 0.9);
    EXPECT_EQ(exact_dp(p, 3).energy, brute_force(p).e0);
  }
}

TEST(ExactDp, EqualsBruteForceOnChains) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = gen_nn_spin_glass(16, seed);
    const auto dp = exact_dp(p, 3);
    EXPECT_EQ(dp.energy, brute_force(p).e0) << seed;
    EXPECT_EQ(energy(p, dp.assignment), dp.energy);
  }
}

TEST(ExactDp, WiderRanges) {
  for (std::size_t r = 1; r <= 6; ++r) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto p = oracle::random_banded(11, r, seed * 31 + r);
      EXPECT_EQ(exact_dp(p, r).energy, brute_force(p).e0) << "r=" << r;
      EXPECT_EQ(exact_dp(p, r + 2).energy, brute_force(p).e0);
    }
  }
}

TEST(ExactDp, RangeViolation) {
  HuboProblem p(5);
  p.add_quadratic(0, 3, 1.0);
  EXPECT_THROW(exact_dp(p, 3), RangeViolation);
  EXPECT_NO_THROW(exact_dp(p, 4));
  EXPECT_THROW(exact_dp(p, 21), InvalidArgument);
  EXPECT_EQ(dp_range(p), 4u);
}

TEST(ExactDp, LongChainSelfConsistent) {
  const auto p = gen_nn_spin_glass(433, 1);
  const auto r = exact_dp(p, 3);
  EXPECT_EQ(energy(p, r.assignment), r.energy);
  EXPECT_TRUE(is_one_flip_optimal(p, r.assignment));
}

TEST(ExactDp, SingleSurvivorIsAnUpperBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = gen_nn_spin_glass(14, seed);
    const auto greedy = exact_dp(p, 3, DpMode::single_survivor);
    EXPECT_GE(greedy.energy, exact_dp(p, 3).energy);
    EXPECT_EQ(energy(p, greedy.assignment), greedy.energy);
  }
}

TEST(ExactReference, PicksApplicableMethod) {
  const auto chain = exact_reference(gen_nn_spin_glass(30, 2));
  ASSERT_TRUE(chain);
  EXPECT_EQ(chain->method, "exact_dp");
  const auto dense = exact_reference(cnf_to_hubo(gen_max3sat(22, 4.3, true, 1)));
  ASSERT_TRUE(dense);
  EXPECT_EQ(dense->method, "brute_force");
  EXPECT_FALSE(exact_reference(cnf_to_hubo(gen_max3sat(30, 4.3, true, 1))));
}

TEST(Annealing, Schedule) {
  AnnealParams a;
  EXPECT_DOUBLE_EQ(a.temperature(0), 2.0);
  EXPECT_NEAR(a.temperature(a.sweeps - 1), 0.05, 1e-15);
  a.sweeps = 1;
  EXPECT_DOUBLE_EQ(a.temperature(0), 2.0);
  EXPECT_THROW((AnnealParams{1, 1, 0.1, 0.2}).validate(), InvalidArgument);
  EXPECT_THROW((AnnealParams{0, 1, 1, 1}).validate(), InvalidArgument);
}

TEST(Annealing, FindsGroundStateAndIsDeterministic) {
  const auto p = gen_nn_spin_glass(20, 3);
  const double e0 = exact_dp(p, 3).energy;
  const AnnealParams params{200, 300, 2.0, 0.05};
  const auto r = simulated_annealing(p, params, 5);
  EXPECT_EQ(r.energy, energy(p, r.assignment));
  EXPECT_NEAR(r.energy, e0, 1e-9);
  const auto again = simulated_annealing(p, params, 5);
  EXPECT_EQ(again.assignment, r.assignment);
}

TEST(Annealing, ColdLimitNeverIncreasesEnergy) {
  const auto p = gen_nn_spin_glass(12, 6);
  const AnnealParams cold{1, 1, 1e-300, 1e-300};
  const auto r = simulated_annealing(p, cold, 1);
  const auto ls = local_search(p, 1, 1, 1);
  // One cold sweep from the same start can only go downhill.
  Rng rng(mix_seed(1, 0));
  std::vector<std::int8_t> s(12);
  for (auto& v : s) v = rng.coin() ? -1 : 1;
  EXPECT_LE(r.energy, energy(p, SpinAssignment(s)) + 1e-12);
  EXPECT_LE(ls.energy, energy(p, SpinAssignment(s)) + 1e-12);
}

TEST(IncrementalUpdates, FlipModelMatchesRecomputation) {
  const auto p = oracle::random_hubo(9, 4, 0.6);
  detail::FlipModel model(p);
  std::vector<std::int8_t> s(9, 1);
  std::vector<double> f;
  model.init_fields(s, f);
  std::mt19937_64 gen(2);
  double e = energy(p, SpinAssignment(s));
  for (int k = 0; k < 500; ++k) {
    const auto i = static_cast<Index>(gen() % 9);
    e += -2.0 * s[i] * f[i];
    model.flip(s, f, i);
    EXPECT_NEAR(e, energy(p, SpinAssignment(s)), 1e-9);
  }
}

TEST(LocalSearch, OneFlipOptimalAndMatchesReference) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = gen_nn_spin_glass(20, seed);
    const auto r = local_search(p, 20, 100, seed);
    EXPECT_TRUE(is_one_flip_optimal(p, r.assignment));
    EXPECT_EQ(r.energy, energy(p, r.assignment));
    const auto ref = greedy_descent(p, 20, 100, seed);
    EXPECT_EQ(r.assignment, ref.assignment) << seed;
  }
}

TEST(Tabu, BeatsOrMatchesLocalSearch) {
  std::vector<double> diffs;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = gen_nn_spin_glass(20, seed + 40);
    const auto t = tabu_search(p, TabuParams{20, 10, 100}, seed);
    const auto l = local_search(p, 20, 100, seed);
    EXPECT_EQ(t.energy, energy(p, t.assignment));
    EXPECT_TRUE(is_one_flip_optimal(p, t.assignment));
    diffs.push_back(t.energy - l.energy);
  }
  std::sort(diffs.begin(), diffs.end());
  EXPECT_LE(diffs[diffs.size() / 2], 0.0);
}

TEST(Tabu, ZeroTenureIsSteepestDescent) {
  const auto p = gen_nn_spin_glass(15, 9);
  const auto r = tabu_search(p, TabuParams{5, 0, 5}, 2);
  EXPECT_TRUE(is_one_flip_optimal(p, r.assignment));
  EXPECT_THROW(tabu_search(p, TabuParams{0, 1, 1}, 1), InvalidArgument);
}
