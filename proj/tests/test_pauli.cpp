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

PauliSum random_sum(std::size_t n, std::uint64_t seed, std::size_t terms) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  PauliSum s(n);
  for (std::size_t t = 0; t < terms; ++t) {
    std::string label;
    for (std::size_t q = 0; q < n; ++q) label.push_back("IXYZ"[gen() % 4]);
    s.add(PauliString::parse(label), Complex(normal(gen), normal(gen)));
  }
  return s;
}

}  // namespace

TEST(PauliMul, Table) {
  auto [p1, s1] = pauli_mul(PauliString::parse("X"), PauliString::parse("Z"));
  EXPECT_EQ(p1, Complex(0, -1));
  EXPECT_EQ(s1.str(), "Y");
  auto [p2, s2] = pauli_mul(PauliString::parse("Z"), PauliString::parse("Z"));
  EXPECT_EQ(p2, Complex(1, 0));
  EXPECT_TRUE(s2.is_identity());
  auto [p3, s3] = pauli_mul(PauliString::parse("XZ"), PauliString::parse("ZZ"));
  EXPECT_EQ(p3, Complex(0, -1));
  EXPECT_EQ(s3.str(), "YI");
  EXPECT_THROW(pauli_mul(PauliString::parse("X"), PauliString::parse("XX")), DimensionError);
}

TEST(PauliMul, MatchesDenseProducts) {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 200; ++t) {
    std::string a, b;
    for (int q = 0; q < 3; ++q) {
      a.push_back("IXYZ"[gen() % 4]);
      b.push_back("IXYZ"[gen() % 4]);
    }
    auto [phase, p] = pauli_mul(PauliString::parse(a), PauliString::parse(b));
    const Eigen::MatrixXcd lhs = oracle::pauli_matrix(a) * oracle::pauli_matrix(b);
    EXPECT_LT((lhs - phase * oracle::pauli_matrix(p.str())).norm(), 1e-14) << a << " " << b;
  }
}

TEST(PauliString, Basics) {
  const auto p = PauliString(5, {{3, Pauli::Z}, {1, Pauli::Y}});
  EXPECT_EQ(p.str(), "IYIZI");
  EXPECT_EQ(p.weight(), 2u);
  EXPECT_EQ(p.span(), 3u);
  EXPECT_EQ(p.at(1), Pauli::Y);
  EXPECT_EQ(p.at(0), Pauli::I);
  EXPECT_FALSE(p.is_diagonal());
  EXPECT_TRUE(PauliString::parse("ZIZ").is_diagonal());
  EXPECT_TRUE(PauliString::parse("XI").anticommutes(PauliString::parse("ZI")));
  EXPECT_FALSE(PauliString::parse("XX").anticommutes(PauliString::parse("ZZ")));
}

TEST(Commutator, Examples) {
  PauliSum z(1), x(1);
  z.add(PauliString::parse("Z"), 1.0);
  x.add(PauliString::parse("X"), 1.0);
  const auto c = commutator(z, x);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.coefficient(PauliString::parse("Y")), Complex(0, 2));

  PauliSum zi(2), zz(2);
  zi.add(PauliString::parse("ZI"), 1.0);
  zz.add(PauliString::parse("ZZ"), 1.0);
  EXPECT_TRUE(commutator(zi, zz).empty());
}

TEST(Commutator, MatchesDenseMatrices) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = random_sum(3, seed, 6);
    const auto b = random_sum(3, seed + 50, 6);
    const Eigen::MatrixXcd ma = oracle::sum_matrix(a), mb = oracle::sum_matrix(b);
    EXPECT_LT((oracle::sum_matrix(commutator(a, b)) - (ma * mb - mb * ma)).norm(), 1e-11);
    EXPECT_LT((oracle::sum_matrix(a * b) - ma * mb).norm(), 1e-11);
  }
}

TEST(Commutator, AntisymmetricAndBilinear) {
  const auto a = random_sum(4, 1, 8), b = random_sum(4, 2, 8), c = random_sum(4, 3, 8);
  const auto ab = commutator(a, b), ba = commutator(b, a);
  EXPECT_LT(oracle::trace_norm(oracle::sum_matrix(ab + ba)), 1e-20);
  const auto lhs = commutator(a + c * Complex(0.5, -1.0), b);
  const auto rhs = ab + commutator(c, b) * Complex(0.5, -1.0);
  EXPECT_LT(oracle::trace_norm(oracle::sum_matrix(lhs - rhs)), 1e-20);
}

TEST(PauliSum, NormAndHermiticity) {
  const auto p = oracle::random_hubo(3, 4);
  const auto h = hubo_to_pauli(p);
  EXPECT_TRUE(h.is_hermitian());
  const auto s = random_sum(3, 7, 10);
  EXPECT_NEAR(s.norm_squared(), oracle::trace_norm(oracle::sum_matrix(s)), 1e-10);
}

TEST(HuboToPauli, DiagonalMatchesEnergies) {
  auto p = oracle::random_hubo(4, 12);
  p.add_offset(-0.7);
  const Eigen::MatrixXcd m = oracle::sum_matrix(hubo_to_pauli(p));
  for (std::uint64_t code = 0; code < 16; ++code)
    EXPECT_NEAR(m(code, code).real(), oracle::energy(p, oracle::spins_of(code, 4)), 1e-12);
  EXPECT_LT((m - Eigen::MatrixXcd(m.diagonal().asDiagonal())).norm(), 1e-14);
}
