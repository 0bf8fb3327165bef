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

SampleSet random_samples(std::size_t n, std::uint64_t seed, std::size_t distinct) {
  std::mt19937_64 gen(seed);
  std::vector<SampleEntry> entries;
  for (std::size_t k = 0; k < distinct; ++k) {
    std::string bits;
    for (std::size_t q = 0; q < n; ++q) bits.push_back(gen() % 2 ? '1' : '0');
    entries.push_back({bits, 1 + gen() % 20});
  }
  auto s = SampleSet::from_entries(n, entries);
  s.assign_energies(gen_nn_spin_glass(n, seed));
  return s;
}

/// Expands every shot, sorts by (energy, bits) and averages the head.
std::pair<double, std::vector<double>> materialised_cvar(const SampleSet& s, double alpha) {
  std::vector<std::pair<double, std::string>> shots;
  for (const auto& e : s.entries())
    for (std::uint64_t c = 0; c < e.count; ++c) shots.emplace_back(e.energy, e.bits);
  std::sort(shots.begin(), shots.end());
  auto k = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(shots.size()) - 1e-9));
  k = std::max<std::size_t>(k, 1);
  double e = 0.0;
  std::vector<double> z(s.n_qubits(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    e += shots[i].first;
    for (std::size_t q = 0; q < z.size(); ++q) z[q] += shots[i].second[q] == '0' ? 1.0 : -1.0;
  }
  for (auto& v : z) v /= static_cast<double>(k);
  return {e / static_cast<double>(k), z};
}

}  // namespace

TEST(Cvar, Examples) {
  auto s = SampleSet::from_entries(1, {{"1", 1, -2.0}, {"0", 9, 0.0}});
  EXPECT_DOUBLE_EQ(cvar_energy(s, 0.1), -2.0);
  EXPECT_DOUBLE_EQ(cvar_energy(s, 1.0), s.mean_energy());
  EXPECT_THROW(cvar_energy(SampleSet(), 0.5), InvalidArgument);
  EXPECT_THROW(cvar_energy(s, 0.0), InvalidArgument);
  EXPECT_THROW(cvar_energy(s, 1.5), InvalidArgument);
  EXPECT_EQ(cvar_count(2000, 0.01), 20u);
  EXPECT_EQ(cvar_count(10, 0.01), 1u);
  const auto flat = SampleSet::from_entries(2, {{"00", 7, 0.1}, {"11", 3, 0.1}});
  for (double alpha : {0.1, 0.3, 0.7, 1.0}) EXPECT_EQ(cvar_energy(flat, alpha), 0.1);
}

TEST(Cvar, MatchesMaterialisedOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_samples(6, seed, 25);
    for (double alpha : {0.01, 0.1, 0.33, 0.5, 1.0}) {
      const auto [e, z] = materialised_cvar(s, alpha);
      EXPECT_NEAR(cvar_energy(s, alpha), e, 1e-12);
      const auto zz = cvar_expectations(s, alpha);
      for (std::size_t q = 0; q < z.size(); ++q) EXPECT_NEAR(zz[q], z[q], 1e-12);
    }
    EXPECT_NEAR(cvar_energy(s, 1.0), s.mean_energy(), 1e-12);
  }
}

TEST(Cvar, MonotoneInAlpha) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = random_samples(5, seed + 500, 12);
    double prev = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 100; ++k) {
      const double v = cvar_energy(s, k / 100.0);
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(CvarExpectations, Examples) {
  auto all = SampleSet::from_entries(2, {{"00", 7, 0.0}});
  EXPECT_EQ(cvar_expectations(all, 0.5), (std::vector<double>{1.0, 1.0}));
  auto one = SampleSet::from_entries(2, {{"10", 1, -3.0}, {"01", 50, 1.0}, {"11", 49, 2.0}});
  EXPECT_EQ(cvar_expectations(one, 0.01), (std::vector<double>{-1.0, 1.0}));
}

TEST(UpdateBias, Strategies) {
  const std::vector<double> zero(3, 0.0);
  for (auto s : {Strategy::unsigned_bias, Strategy::unsigned_antibias, Strategy::signed_bias, Strategy::signed_antibias})
    for (double b : update_bias(zero, s, 5.0).hb) EXPECT_EQ(b, 0.0);
  EXPECT_EQ(update_bias({0.3, -0.1}, Strategy::signed_bias, 5.0).hb, (std::vector<double>{-5.0, 5.0}));
  EXPECT_EQ(update_bias({0.3, -0.1}, Strategy::unsigned_bias).hb, (std::vector<double>{-0.3, 0.1}));
  EXPECT_EQ(update_bias({0.3, -0.1}, Strategy::unsigned_antibias).hb, (std::vector<double>{0.3, -0.1}));
  EXPECT_EQ(update_bias({0.3, -0.1}, Strategy::signed_antibias, 2.0).hb, (std::vector<double>{2.0, -2.0}));
  EXPECT_THROW(update_bias({0.1}, Strategy::signed_bias, 0.0), InvalidArgument);
}

TEST(UpdateBias, OddAndSignConsistent) {
  const auto z = oracle::random_vector(8, 3, -1, 1);
  std::vector<double> neg;
  for (double v : z) neg.push_back(-v);
  for (auto s : {Strategy::unsigned_bias, Strategy::unsigned_antibias, Strategy::signed_bias, Strategy::signed_antibias}) {
    const auto a = update_bias(z, s, 1.7).hb, b = update_bias(neg, s, 1.7).hb;
    for (std::size_t i = 0; i < z.size(); ++i) EXPECT_EQ(a[i], -b[i]);
  }
  const auto u = update_bias(z, Strategy::unsigned_bias).hb, g = update_bias(z, Strategy::signed_bias).hb;
  for (std::size_t i = 0; i < z.size(); ++i) EXPECT_GT(u[i] * g[i], 0.0);
}

TEST(Metrics, Definitions) {
  auto ground = SampleSet::from_entries(2, {{"01", 10, -3.0}});
  const auto m = metrics(ground, -3.0);
  EXPECT_DOUBLE_EQ(m.ar, 1.0);
  EXPECT_DOUBLE_EQ(m.ds, 0.0);
  auto half = SampleSet::from_entries(1, {{"0", 1, -118.0}});
  EXPECT_DOUBLE_EQ(metrics(half, -236.0).ar, 0.5);
  EXPECT_THROW(metrics(half, 0.0), UndefinedMetric);
  const auto r = random_samples(6, 4, 30);
  const double e0 = -10.0;
  EXPECT_NEAR(metrics(r, e0).ar * e0, r.mean_energy(), 1e-12);
  EXPECT_NEAR(metrics(r, e0).ds, 1.0 - r.min_energy() / e0, 1e-15);
}

TEST(Driver, SingleIterationIsPlainDcqo) {
  const auto p = gen_nn_spin_glass(6, 2);
  BfdcqoConfig cfg;
  cfg.iterations = 1;
  cfg.shots = 200;
  const auto r = run_bfdcqo(p, cfg);
  ASSERT_EQ(r.iterations.size(), 1u);
  for (double b : r.iterations[0].bias) EXPECT_EQ(b, 0.0);
  EXPECT_TRUE(r.iterations[0].strategy.empty());
  EXPECT_EQ(r.e0_source, "exact_dp");
}

TEST(Driver, RecordsAreConsistent) {
  const auto p = gen_nn_spin_glass(8, 5);
  BfdcqoConfig cfg;
  cfg.iterations = 4;
  cfg.shots = 500;
  cfg.seed = 3;
  const auto r = run_bfdcqo(p, cfg);
  ASSERT_EQ(r.iterations.size(), 4u);
  EXPECT_EQ(r.iterations[3].strategy, "signed_bias");
  EXPECT_EQ(r.iterations[3].kappa, 5.0);
  EXPECT_EQ(r.iterations[1].strategy, "unsigned_bias");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& it : r.iterations) {
    ASSERT_TRUE(it.samples);
    auto s = *it.samples;
    s.assign_energies(p);
    const auto m = metrics(s, *r.e0);
    EXPECT_EQ(m.ar, *it.ar);
    EXPECT_EQ(m.ds, *it.ds);
    EXPECT_EQ(s.n_shots(), 500u);
    best = std::min(best, it.best_energy);
  }
  EXPECT_EQ(best, r.best_energy);
  EXPECT_EQ(energy(p, assignment_from_bits(r.best_bits)), r.best_energy);
  const auto again = run_bfdcqo(p, cfg);
  EXPECT_EQ(again.iterations.back().samples, r.iterations.back().samples);
}

TEST(Driver, JsonRoundTripIsLossless) {
  const auto p = gen_nn_spin_glass(7, 1);
  BfdcqoConfig cfg;
  cfg.iterations = 3;
  cfg.shots = 300;
  cfg.backend = Backend::mps;
  cfg.updates = {Strategy::unsigned_antibias, Strategy::signed_bias};
  const auto r = run_bfdcqo(p, cfg);
  EXPECT_TRUE(r.iterations[0].entropy);
  const auto back = run_from_json(json::parse(run_to_json(r).dump()));
  EXPECT_EQ(back, r);
  EXPECT_THROW(run_from_json(json::parse(R"({"schema": "other/1"})")), FormatError);
}

TEST(Driver, ExactExpectationModeIsDeterministic) {
  const auto p = gen_nn_spin_glass(6, 8);
  BfdcqoConfig cfg;
  cfg.iterations = 3;
  cfg.alpha = 1.0;
  cfg.exact_expectations = true;
  cfg.shots = 100;
  cfg.seed = 1;
  const auto a = run_bfdcqo(p, cfg);
  cfg.seed = 2;
  const auto b = run_bfdcqo(p, cfg);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(a.iterations[k].bias, b.iterations[k].bias);
}

TEST(Driver, BackendsAgreeOnBias) {
  const auto p = gen_nn_spin_glass(8, 4);
  BfdcqoConfig cfg;
  cfg.iterations = 3;
  cfg.shots = 400;
  cfg.mps = MpsOptions{0, 1e-14};
  const auto sv = run_bfdcqo(p, cfg);
  cfg.backend = Backend::mps;
  const auto mps = run_bfdcqo(p, cfg);
  EXPECT_EQ(sv.iterations[0].rotations, mps.iterations[0].rotations);
  EXPECT_NEAR(sv.iterations[0].mean_energy, mps.iterations[0].mean_energy, 0.5);
}

TEST(Driver, RejectsMismatchedBackendAndConfig) {
  const auto dense = oracle::random_hubo(6, 2, 0.8);
  BfdcqoConfig cfg;
  cfg.iterations = 1;
  cfg.shots = 10;
  cfg.backend = Backend::mps;
  EXPECT_THROW(run_bfdcqo(dense, cfg), InvalidArgument);
  cfg.backend = Backend::statevector;
  cfg.updates = {Strategy::signed_bias};
  EXPECT_THROW(run_bfdcqo(dense, cfg), InvalidArgument);
  cfg.updates.clear();
  cfg.alpha = 0.0;
  EXPECT_THROW(run_bfdcqo(dense, cfg), InvalidArgument);
}

TEST(Driver, ConfigJsonDefaultsAndOverrides) {
  const auto c = config_from_json(json::parse(R"({"alpha": 0.05, "backend": "mps", "updates": ["signed_antibias"], "iterations": 2, "drive": {"theta_cutoff": 0.1}})"));
  EXPECT_EQ(c.alpha, 0.05);
  EXPECT_EQ(c.backend, Backend::mps);
  EXPECT_EQ(c.updates, std::vector<Strategy>{Strategy::signed_antibias});
  EXPECT_EQ(c.drive.theta_cutoff, 0.1);
  EXPECT_EQ(c.shots, BfdcqoConfig{}.shots);
  EXPECT_EQ(config_from_json(config_to_json(c)), c);
  EXPECT_THROW(config_from_json(json::parse(R"({"backend": "gpu"})")), InvalidArgument);
}

TEST(BaselineIo, RoundTrip) {
  BaselineRecord b{"sa", 20, 7, json{{"reads", 10}}, -12.5, std::string(20, '0'), -12.5, 0.25};
  const auto back = baseline_from_json(json::parse(baseline_to_json(b).dump()));
  EXPECT_EQ(back.method, "sa");
  EXPECT_EQ(back.params, b.params);
  EXPECT_EQ(back.best_energy, b.best_energy);
  EXPECT_EQ(back.e0, b.e0);
}
