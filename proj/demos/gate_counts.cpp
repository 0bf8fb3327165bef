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

// Native gate counts of one counterdiabatic circuit as the angle cutoff grows,
// for both target gate sets.

#include <bfdcqo/all.hpp>

#include <iostream>

int main() {
  using namespace bfdcqo;
  const std::size_t n = 20;
  const HuboProblem p = gen_nn_spin_glass(n, 3);
  for (auto set : {NativeSet::cz_set, NativeSet::ms_set}) {
    std::cout << "# native set " << native_set_name(set) << ", rows keyed by cutoff index\n";
    write_counts_csv_header(std::cout, set);
    std::size_t row = 0;
    for (double cutoff : {0.0, 0.01, 0.05, 0.1, 0.2}) {
      DriveSpec d = DriveSpec::uniform(n);
      d.theta_cutoff = cutoff;
      write_counts_csv_row(std::cout, row++, count_circuit(build_cd_circuit(p, d, BiasState::zeros(n)), set), set);
    }
  }
}
