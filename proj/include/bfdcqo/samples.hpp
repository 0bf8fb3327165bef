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
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bfdcqo/errors.hpp"
#include "bfdcqo/hubo.hpp"

namespace bfdcqo {

struct SampleEntry {
  std::string bits;
  std::uint64_t count = 0;
  double energy = std::numeric_limits<double>::quiet_NaN();
  friend bool operator==(const SampleEntry& a, const SampleEntry& b) {
    return a.bits == b.bits && a.count == b.count &&
           (a.energy == b.energy || (std::isnan(a.energy) && std::isnan(b.energy)));
  }
};

/// Measurement record: distinct bitstrings (qubit 0 leftmost) with shot
/// counts, sorted by bitstring, plus the cost of each outcome once
/// assign_energies has been called.
class SampleSet {
 public:
  SampleSet() = default;

  static SampleSet from_counts(std::size_t n_qubits,
                               const std::map<std::string, std::uint64_t>& counts) {
    SampleSet s;
    s.n_qubits_ = n_qubits;
    for (const auto& [bits, count] : counts) {
      if (bits.size() != n_qubits) throw DimensionError("SampleSet: bitstring length mismatch");
      if (count == 0) continue;
      s.entries_.push_back({bits, count});
      s.n_shots_ += count;
    }
    return s;
  }

  /// Entries in any order; merged and sorted.
  static SampleSet from_entries(std::size_t n_qubits, const std::vector<SampleEntry>& entries) {
    std::map<std::string, SampleEntry> merged;
    for (const auto& e : entries) {
      if (e.bits.size() != n_qubits) throw DimensionError("SampleSet: bitstring length mismatch");
      auto [it, inserted] = merged.try_emplace(e.bits, e);
      if (!inserted) it->second.count += e.count;
    }
    SampleSet s;
    s.n_qubits_ = n_qubits;
    for (auto& [bits, e] : merged) {
      if (e.count == 0) continue;
      s.n_shots_ += e.count;
      s.entries_.push_back(std::move(e));
    }
    return s;
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::uint64_t n_shots() const { return n_shots_; }
  const std::vector<SampleEntry>& entries() const { return entries_; }
  bool empty() const { return n_shots_ == 0; }

  void assign_energies(const HuboProblem& p) {
    if (p.n() != n_qubits_) throw DimensionError("assign_energies: problem size mismatch");
    for (auto& e : entries_) e.energy = energy(p, SpinAssignment::from_bits(e.bits));
  }

  bool has_energies() const {
    return std::none_of(entries_.begin(), entries_.end(),
                        [](const SampleEntry& e) { return std::isnan(e.energy); });
  }

  double mean_energy() const {
    require_energies();
    double s = 0.0;
    for (const auto& e : entries_) s += e.energy * static_cast<double>(e.count);
    return s / static_cast<double>(n_shots_);
  }

  /// Lowest-energy entry; ties go to the lexicographically smaller bitstring.
  const SampleEntry& best() const {
    require_energies();
    return *std::min_element(entries_.begin(), entries_.end(),
                             [](const SampleEntry& a, const SampleEntry& b) {
                               return a.energy < b.energy ||
                                      (a.energy == b.energy && a.bits < b.bits);
                             });
  }

  double min_energy() const { return best().energy; }

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

 private:
  void require_energies() const {
    if (empty()) throw InvalidArgument("SampleSet is empty");
    if (!has_energies()) throw InvalidArgument("SampleSet energies not assigned");
  }

  std::size_t n_qubits_ = 0;
  std::uint64_t n_shots_ = 0;
  std::vector<SampleEntry> entries_;
};

}  // namespace bfdcqo
