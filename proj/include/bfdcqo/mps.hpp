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
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bfdcqo/cd.hpp"
#include "bfdcqo/errors.hpp"
#include "bfdcqo/pauli.hpp"
#include "bfdcqo/rng.hpp"
#include "bfdcqo/samples.hpp"
#include "bfdcqo/statevector.hpp"

namespace bfdcqo {

struct MpsOptions {
  /// 0 means uncapped.
  std::size_t max_bond = 64;
  /// Largest discarded fraction of squared singular-value weight per split.
  double trunc_cutoff = 1e-10;

  friend bool operator==(const MpsOptions&, const MpsOptions&) = default;
};

namespace detail {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Rank-3 tensor (left, phys, right) in row-major order; the same buffer is
/// the (left*phys, right) and (left, phys*right) matrix.
struct Tensor3 {
  std::size_t left = 1;
  std::size_t phys = 2;
  std::size_t right = 1;
  std::vector<Complex> data;

  Tensor3() = default;
  Tensor3(std::size_t l, std::size_t p, std::size_t r)
      : left(l), phys(p), right(r), data(l * p * r, Complex{}) {}

  Complex& at(std::size_t l, std::size_t s, std::size_t r) { return data[(l * phys + s) * right + r]; }
  Complex at(std::size_t l, std::size_t s, std::size_t r) const {
    return data[(l * phys + s) * right + r];
  }

  Eigen::Map<RowMatrix> grouped(std::size_t rows) {
    return {data.data(), static_cast<Eigen::Index>(rows),
            static_cast<Eigen::Index>(data.size() / rows)};
  }
  Eigen::Map<const RowMatrix> grouped(std::size_t rows) const {
    return {data.data(), static_cast<Eigen::Index>(rows),
            static_cast<Eigen::Index>(data.size() / rows)};
  }

  static Tensor3 from_matrix(const RowMatrix& m, std::size_t left, std::size_t phys) {
    Tensor3 t;
    t.left = left;
    t.phys = phys;
    t.right = static_cast<std::size_t>(m.size()) / (left * phys);
    t.data.assign(m.data(), m.data() + m.size());
    return t;
  }
};

/// exp(-i theta/2 P) on `span` contiguous sites starting at `first`; the
/// first site is the most significant bit of the block index.
inline RowMatrix rotation_matrix(const PauliString& p, double theta, Index first,
                                 std::size_t span) {
  static const Eigen::Matrix2cd kX = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  static const Eigen::Matrix2cd kY =
      (Eigen::Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Eigen::Matrix2cd kZ = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t s = 0; s < span; ++s) {
    Eigen::Matrix2cd local = Eigen::Matrix2cd::Identity();
    switch (p.at(static_cast<Index>(first + s))) {
      case Pauli::X: local = kX; break;
      case Pauli::Y: local = kY; break;
      case Pauli::Z: local = kZ; break;
      case Pauli::I: break;
    }
    Eigen::MatrixXcd next(op.rows() * 2, op.cols() * 2);
    for (Eigen::Index r = 0; r < op.rows(); ++r)
      for (Eigen::Index c = 0; c < op.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = op(r, c) * local;
    op = std::move(next);
  }
  const Eigen::Index dim = op.rows();
  RowMatrix g = std::cos(theta / 2.0) * RowMatrix::Identity(dim, dim) -
                Complex(0.0, std::sin(theta / 2.0)) * op;
  return g;
}

}  // namespace detail

/// Open-boundary matrix product state with a single orthogonality centre.
/// Tensors left of the centre are left-isometries, tensors right of it are
/// right-isometries, and the whole norm sits in the centre tensor.
class MpsState {
 public:
  MpsState() = default;

  std::size_t n() const { return sites_.size(); }
  const MpsOptions& options() const { return options_; }
  std::size_t center() const { return center_; }

  std::vector<std::size_t> bond_dims() const {
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i + 1 < sites_.size(); ++i) d.push_back(sites_[i].right);
    return d;
  }
  std::size_t max_bond_dim() const {
    std::size_t m = 1;
    for (auto d : bond_dims()) m = std::max(m, d);
    return m;
  }

  /// Largest discarded weight of any single split so far, and their sum.
  double max_discarded_weight() const { return max_discarded_; }
  double total_discarded_weight() const { return total_discarded_; }

  static MpsState product(const std::vector<double>& prep_angles, const MpsOptions& opts) {
    if (prep_angles.empty()) throw InvalidArgument("MpsState: need at least one site");
    MpsState m;
    m.options_ = opts;
    for (double theta : prep_angles) {
      detail::Tensor3 t(1, 2, 1);
      t.at(0, 0, 0) = std::cos(theta / 2.0);
      t.at(0, 1, 0) = std::sin(theta / 2.0);
      m.sites_.push_back(std::move(t));
    }
    m.center_ = 0;
    return m;
  }

  void move_center(std::size_t target) {
    while (center_ < target) shift_right();
    while (center_ > target) shift_left();
  }

  /// exp(-i theta/2 P) with the support of P inside three consecutive sites.
  void apply_rotation(const PauliString& p, double theta) {
    if (p.n() != n()) throw DimensionError("MPS apply_rotation: register size mismatch");
    if (p.is_identity()) throw UnsupportedGate("MPS apply_rotation: identity rotation");
    const std::size_t span = p.span();
    if (span > 3)
      throw UnsupportedGate("MPS apply_rotation: support " + p.str() +
                            " spans more than three contiguous sites");
    if (theta == 0.0) return;
    const Index first = p.ops().front().first;
    move_center(first);
    const auto gate = detail::rotation_matrix(p, theta, first, span);

    // Contract the block into theta(left, 2^span, right).
    detail::Tensor3 block = sites_[first];
    for (std::size_t s = 1; s < span; ++s) {
      const auto& next = sites_[first + s];
      detail::RowMatrix merged =
          block.grouped(block.left * block.phys) * next.grouped(next.left);
      block = detail::Tensor3::from_matrix(merged, block.left, block.phys * 2);
    }
    for (std::size_t l = 0; l < block.left; ++l) {
      Eigen::Map<detail::RowMatrix> slab(block.data.data() + l * block.phys * block.right,
                                         static_cast<Eigen::Index>(block.phys),
                                         static_cast<Eigen::Index>(block.right));
      detail::RowMatrix updated = gate * slab;
      slab = updated;
    }

    // Re-split left to right; the centre ends on the last site of the block.
    for (std::size_t s = 0; s + 1 < span; ++s) {
      const std::size_t rows = block.left * 2;
      Eigen::MatrixXcd mat = block.grouped(rows);
      Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const Eigen::VectorXd sv = svd.singularValues();
      const std::size_t keep = truncation_rank(sv);
      const double kept_norm = sv.head(static_cast<Eigen::Index>(keep)).norm();
      detail::RowMatrix u = svd.matrixU().leftCols(static_cast<Eigen::Index>(keep));
      detail::RowMatrix rest =
          (sv.head(static_cast<Eigen::Index>(keep)) / kept_norm).asDiagonal() *
          svd.matrixV().leftCols(static_cast<Eigen::Index>(keep)).adjoint();
      sites_[first + s] = detail::Tensor3::from_matrix(u, block.left, 2);
      block = detail::Tensor3::from_matrix(rest, keep, block.phys / 2);
    }
    sites_[first + span - 1] = std::move(block);
    center_ = first + span - 1;
  }

  /// Schmidt coefficients across every bond (bond i sits between sites i and
  /// i+1), obtained from an exact SVD sweep on a copy of the state.
  std::vector<std::vector<double>> schmidt_values() const {
    MpsState work = *this;
    work.move_center(0);
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i + 1 < work.n(); ++i) {
      auto& a = work.sites_[i];
      Eigen::MatrixXcd mat = a.grouped(a.left * 2);
      Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const Eigen::VectorXd sv = svd.singularValues();
      const double total = sv.norm();
      std::vector<double> lambdas;
      for (Eigen::Index k = 0; k < sv.size(); ++k) lambdas.push_back(sv[k] / total);
      out.push_back(std::move(lambdas));
      detail::RowMatrix u = svd.matrixU();
      detail::RowMatrix sv_dag = sv.asDiagonal() * svd.matrixV().adjoint();
      auto& b = work.sites_[i + 1];
      detail::RowMatrix next = sv_dag * b.grouped(b.left);
      const std::size_t k = static_cast<std::size_t>(sv.size());
      work.sites_[i] = detail::Tensor3::from_matrix(u, a.left, 2);
      work.sites_[i + 1] = detail::Tensor3::from_matrix(next, k, 2);
      work.center_ = i + 1;
    }
    return out;
  }

  /// Von Neumann entropy in bits at every bond.
  std::vector<double> bond_entropies() const {
    std::vector<double> s;
    for (const auto& lambdas : schmidt_values()) {
      double e = 0.0;
      for (double l : lambdas) {
        const double p = l * l;
        if (p > 0.0) e -= p * std::log2(p);
      }
      s.push_back(std::max(0.0, e));
    }
    return s;
  }

  /// Dense amplitudes, qubit 0 most significant.
  StateVector to_statevector(std::size_t max_qubits = kDefaultMaxQubits) const {
    if (n() > max_qubits) throw SizeLimitError("MPS to_statevector: too many sites");
    detail::RowMatrix psi = sites_[0].grouped(2);
    for (std::size_t i = 1; i < n(); ++i) {
      const auto& a = sites_[i];
      detail::RowMatrix merged = psi * a.grouped(a.left);
      psi = Eigen::Map<detail::RowMatrix>(merged.data(), merged.rows() * 2, merged.cols() / 2);
    }
    std::vector<Complex> amps(psi.data(), psi.data() + psi.size());
    return StateVector::from_amplitudes(std::move(amps));
  }

  /// Perfect sampling site by site from a right-canonical copy. Shots that
  /// share a prefix are processed together and split binomially.
  SampleSet sample(std::uint64_t n_shots, std::uint64_t seed) const {
    if (n_shots < 1) throw InvalidArgument("mps_sample: n_shots must be at least 1");
    MpsState work = *this;
    work.move_center(0);
    Rng rng(seed);
    struct Branch {
      std::string bits;
      Eigen::RowVectorXcd env;
      std::uint64_t count;
    };
    std::vector<Branch> branches{{"", Eigen::RowVectorXcd::Ones(1), n_shots}};
    for (std::size_t i = 0; i < work.n(); ++i) {
      const auto& a = work.sites_[i];
      const auto rg = a.grouped(a.left);
      std::vector<Branch> next;
      for (auto& br : branches) {
        const Eigen::Index dr = static_cast<Eigen::Index>(a.right);
        Eigen::RowVectorXcd v0 = br.env * rg.leftCols(dr);
        Eigen::RowVectorXcd v1 = br.env * rg.rightCols(dr);
        const double p0 = v0.squaredNorm();
        const double p1 = v1.squaredNorm();
        const double prob0 = p0 / (p0 + p1);
        std::uint64_t zeros = 0;
        for (std::uint64_t s = 0; s < br.count; ++s)
          if (rng.uniform() < prob0) ++zeros;
        if (zeros > 0) next.push_back({br.bits + '0', v0 / std::sqrt(p0), zeros});
        if (zeros < br.count) next.push_back({br.bits + '1', v1 / std::sqrt(p1), br.count - zeros});
      }
      branches = std::move(next);
    }
    std::map<std::string, std::uint64_t> counts;
    for (const auto& br : branches) counts[br.bits] += br.count;
    return SampleSet::from_counts(n(), counts);
  }

 private:
  std::size_t truncation_rank(const Eigen::VectorXd& sv) {
    const double total = sv.squaredNorm();
    std::size_t keep = static_cast<std::size_t>(sv.size());
    while (keep > 1 && sv[static_cast<Eigen::Index>(keep) - 1] == 0.0) --keep;
    double tail = 0.0;
    while (keep > 1) {
      const double w = std::pow(sv[static_cast<Eigen::Index>(keep) - 1], 2);
      if ((tail + w) / total > options_.trunc_cutoff) break;
      tail += w;
      --keep;
    }
    if (options_.max_bond > 0 && keep > options_.max_bond) keep = options_.max_bond;
    double discarded = 0.0;
    for (Eigen::Index k = static_cast<Eigen::Index>(keep); k < sv.size(); ++k)
      discarded += sv[k] * sv[k];
    discarded /= total;
    max_discarded_ = std::max(max_discarded_, discarded);
    total_discarded_ += discarded;
    return keep;
  }

  void shift_right() {
    auto& a = sites_[center_];
    Eigen::MatrixXcd mat = a.grouped(a.left * 2);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(mat);
    const Eigen::Index k = std::min(mat.rows(), mat.cols());
    detail::RowMatrix q = qr.householderQ() * Eigen::MatrixXcd::Identity(mat.rows(), k);
    Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    auto& b = sites_[center_ + 1];
    detail::RowMatrix next = r * b.grouped(b.left);
    const std::size_t left = a.left;
    sites_[center_] = detail::Tensor3::from_matrix(q, left, 2);
    sites_[center_ + 1] = detail::Tensor3::from_matrix(next, static_cast<std::size_t>(k), 2);
    ++center_;
  }

  void shift_left() {
    auto& a = sites_[center_];
    Eigen::MatrixXcd mat_dag = a.grouped(a.left).adjoint();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(mat_dag);
    const Eigen::Index k = std::min(mat_dag.rows(), mat_dag.cols());
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(mat_dag.rows(), k);
    Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    detail::RowMatrix q_dag = q.adjoint();
    auto& b = sites_[center_ - 1];
    detail::RowMatrix prev = b.grouped(b.left * 2) * r.adjoint();
    const std::size_t b_left = b.left;
    sites_[center_] = detail::Tensor3::from_matrix(q_dag, static_cast<std::size_t>(k), 2);
    sites_[center_ - 1] = detail::Tensor3::from_matrix(prev, b_left, 2);
    --center_;
  }

  std::vector<detail::Tensor3> sites_;
  std::size_t center_ = 0;
  MpsOptions options_;
  double max_discarded_ = 0.0;
  double total_discarded_ = 0.0;
};

inline MpsState mps_prepare(const std::vector<double>& prep_angles, const MpsOptions& opts = {}) {
  return MpsState::product(prep_angles, opts);
}

inline MpsState mps_apply_rotation(MpsState m, const PauliString& p, double theta) {
  m.apply_rotation(p, theta);
  return m;
}

inline SampleSet mps_sample(const MpsState& m, std::uint64_t n_shots, std::uint64_t seed) {
  return m.sample(n_shots, seed);
}

/// Mean over the N-1 bonds of the bond entropy in bits; 0 for one site.
inline double avg_entropy(const MpsState& m) {
  const auto s = m.bond_entropies();
  if (s.empty()) return 0.0;
  double total = 0.0;
  for (double v : s) total += v;
  return total / static_cast<double>(s.size());
}

inline MpsState run_circuit_mps(const Circuit& c, const MpsOptions& opts = {}) {
  if (c.prep_angles.size() != c.n) throw DimensionError("run_circuit_mps: prep layer size mismatch");
  MpsState m = mps_prepare(c.prep_angles, opts);
  for (const auto& r : c.rotations) m.apply_rotation(r.pauli, r.theta);
  return m;
}

/// True when every rotation fits the contiguous three-site window.
inline bool mps_supports(const Circuit& c) {
  return std::all_of(c.rotations.begin(), c.rotations.end(),
                     [](const Rotation& r) { return r.pauli.span() <= 3; });
}

}  // namespace bfdcqo
