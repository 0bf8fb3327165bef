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

#include <filesystem>
#include <numbers>

#include "oracles.hpp"

using namespace bfdcqo;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::vector<Complex> a(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& x : a) {
    x = Complex(normal(gen), normal(gen));
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return StateVector::from_amplitudes(std::move(a));
}

Eigen::VectorXcd as_eigen(const StateVector& s) {
  const auto a = s.amplitudes();
  return Eigen::Map<const Eigen::VectorXcd>(a.data(), static_cast<Eigen::Index>(a.size()));
}

}  // namespace

TEST(Prepare, ProductStates) {
  const auto zero = prepare({0.0, 0.0, 0.0});
  EXPECT_EQ(zero.amplitudes()[0], Complex(1.0, 0.0));
  for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(zero.amplitudes()[i], Complex(0.0, 0.0));
  const auto plus = prepare({kPi / 2, kPi / 2, kPi / 2});
  for (const auto& a : plus.amplitudes()) EXPECT_NEAR(a.real(), 1.0 / std::sqrt(8.0), 1e-15);
  const auto mixed = prepare({kPi / 2, 0.0});
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(mixed.amplitudes()[0] - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(mixed.amplitudes()[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(mixed.amplitudes()[2] - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(mixed.amplitudes()[3]), 0.0, 1e-15);
  EXPECT_THROW(prepare(std::vector<double>(5, 0.0), 4), SizeLimitError);
}

TEST(Rotation, MatchesMatrixExponentialForEveryType) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-3, 3);
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t total = static_cast<std::size_t>(std::pow(4, n));
    for (std::size_t code = 1; code < total; ++code) {
      std::string label;
      for (std::size_t q = 0, c = code; q < n; ++q, c /= 4) label.push_back("IXYZ"[c % 4]);
      if (PauliString::parse(label).weight() > 3) continue;
      const double theta = u(gen);
      auto s = random_state(n, code + 100 * n);
      const Eigen::VectorXcd expected = oracle::rotation_matrix(label, theta) * as_eigen(s);
      s.apply_rotation(PauliString::parse(label), theta);
      EXPECT_LT((as_eigen(s) - expected).cwiseAbs().maxCoeff(), 1e-10) << label;
    }
  }
}

TEST(Rotation, SpecialCases) {
  auto s = random_state(3, 1);
  const auto before = as_eigen(s);
  s.apply_rotation(PauliString::parse("XYZ"), 0.0);
  EXPECT_LT((as_eigen(s) - before).norm(), 1e-15);

  auto zero = prepare({0.0});
  zero.apply_rotation(PauliString::parse("Y"), kPi / 2);
  const auto ry = prepare({kPi / 2});
  EXPECT_LT((as_eigen(zero) - as_eigen(ry)).norm(), 1e-15);
  EXPECT_THROW(zero.apply_rotation(PauliString::parse("YY"), 0.1), DimensionError);
}

TEST(Rotation, NormPreservedOverManyGates) {
  auto s = random_state(6, 4);
  std::mt19937_64 gen(9);
  for (int g = 0; g < 1000; ++g) {
    std::string label(6, 'I');
    for (int k = 0; k < 3; ++k) label[gen() % 6] = "XYZ"[gen() % 3];
    if (label == "IIIIII") label[0] = 'X';
    s.apply_rotation(PauliString::parse(label), 0.37 * static_cast<double>(g % 7));
  }
  EXPECT_NEAR(s.norm(), 1.0, 1e-10);
}

TEST(Rotation, DiagonalRotationsCommute) {
  auto a = random_state(4, 6);
  auto b = a;
  const std::vector<std::pair<std::string, double>> gates{{"ZZII", 0.3}, {"IZIZ", -1.1}, {"ZIZZ", 0.7}, {"IIIZ", 2.0}};
  for (const auto& [l, t] : gates) a.apply_rotation(PauliString::parse(l), t);
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) b.apply_rotation(PauliString::parse(it->first), it->second);
  EXPECT_LT((as_eigen(a) - as_eigen(b)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(RunCircuit, ReverseReturnsInitialState) {
  const auto p = gen_nn_spin_glass(6, 3);
  const auto c = build_cd_circuit(p, DriveSpec::uniform(6), BiasState::zeros(6));
  ASSERT_FALSE(c.rotations.empty());
  auto s = run_circuit(c);
  for (auto it = c.rotations.rbegin(); it != c.rotations.rend(); ++it) s.apply_rotation(it->pauli, -it->theta);
  EXPECT_LT((as_eigen(s) - as_eigen(prepare(c.prep_angles))).norm(), 1e-9);

  Circuit empty{3, {0.1, 0.2, 0.3}, {}};
  EXPECT_LT((as_eigen(run_circuit(empty)) - as_eigen(prepare(empty.prep_angles))).norm(), 1e-15);
}

TEST(RunCircuit, SingleQubitTrotterMatchesFineIntegration) {
  HuboProblem p(1);
  p.add_linear(0, 0.9);
  auto d = DriveSpec::uniform(1);
  d.n_trot = 64;
  const auto c = build_cd_circuit(p, d, BiasState::zeros(1));
  const auto s = run_circuit(c);

  // Fine-step propagation of H(t) = lambda_dot alpha_1 (i O1) with a
  // midpoint matrix exponential per step.
  const auto o1 = build_o1_symbolic(p, d, BiasState::zeros(1));
  const Eigen::MatrixXcd gen = oracle::sum_matrix(o1) * Complex(0.0, 1.0);
  Eigen::VectorXcd psi(2);
  psi << std::cos(kPi / 4), std::sin(kPi / 4);
  const int steps = 20000;
  const double h = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    const auto sp = schedule((k + 0.5) * h, 1.0);
    const double amp = sp.lambda_dot * alpha1(p, d, BiasState::zeros(1), sp.lambda);
    const Eigen::MatrixXcd step = (Complex(0.0, -amp * h) * gen).exp();
    psi = step * psi;
  }
  const double fid = std::norm(psi.dot(as_eigen(s)));
  EXPECT_GE(fid, 1.0 - 1e-3);
}

TEST(Sample, DeterministicAndCorrect) {
  const auto zero = prepare({0.0, 0.0, 0.0});
  const auto s0 = sample(zero, 100, 1);
  ASSERT_EQ(s0.entries().size(), 1u);
  EXPECT_EQ(s0.entries()[0].bits, "000");
  EXPECT_EQ(s0.entries()[0].count, 100u);

  const auto plus = prepare({kPi / 2});
  const auto sp = sample(plus, 100000, 7);
  std::uint64_t zeros = 0;
  for (const auto& e : sp.entries())
    if (e.bits == "0") zeros = e.count;
  const double f = static_cast<double>(zeros) / 1e5;
  EXPECT_GE(f, 0.49);
  EXPECT_LE(f, 0.51);

  const auto r = random_state(5, 3);
  EXPECT_EQ(sample(r, 1000, 42), sample(r, 1000, 42));
  EXPECT_NE(sample(r, 1000, 42), sample(r, 1000, 43));
  EXPECT_THROW(sample(r, 0, 1), InvalidArgument);
}

TEST(Expectations, ExactValues) {
  EXPECT_NEAR(exact_expectations(prepare({0.0}))[0], 1.0, 1e-15);
  EXPECT_NEAR(exact_expectations(prepare({kPi / 2}))[0], 0.0, 1e-15);
}

TEST(Expectations, AgreeWithSampling) {
  const auto s = random_state(4, 12);
  const auto z = exact_expectations(s);
  const std::uint64_t shots = 100000;
  const auto samples = sample(s, shots, 5);
  std::vector<double> est(4, 0.0);
  for (const auto& e : samples.entries())
    for (std::size_t q = 0; q < 4; ++q) est[q] += (e.bits[q] == '0' ? 1.0 : -1.0) * static_cast<double>(e.count);
  for (std::size_t q = 0; q < 4; ++q) EXPECT_NEAR(est[q] / shots, z[q], 5.0 / std::sqrt(double(shots)));
}

TEST(Expectations, SampleEnergyConvergesToExact) {
  const auto p = gen_nn_spin_glass(5, 2);
  const auto s = random_state(5, 8);
  auto samples = sample(s, 200000, 3);
  samples.assign_energies(p);
  EXPECT_NEAR(samples.mean_energy(), expectation(s, p), 0.03);
}

TEST(DumpState, WritesFloatPairs) {
  const auto path = std::filesystem::temp_directory_path() / "bfdcqo_dump_test.bin";
  dump_state(random_state(3, 1), path.string());
  EXPECT_EQ(std::filesystem::file_size(path), 8u * 8u);
  std::filesystem::remove(path);
}
