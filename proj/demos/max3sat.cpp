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

// Weighted MAX-3-SAT on a sliding window of variables. BF-DCQO on the MPS
// backend next to the classical baselines.

#include <bfdcqo/all.hpp>

#include <cstdio>

int main() {
  using namespace bfdcqo;
  const std::size_t n = 16;
  const CnfInstance cnf = gen_max3sat_nn(n, true, 7);
  const HuboProblem p = cnf_to_hubo(cnf);
  const auto ref = exact_dp(p, dp_range(p));
  std::printf("%zu variables, %zu clauses, best satisfiable weight %.4f\n", n, cnf.clauses().size(),
              -ref.energy);

  BfdcqoConfig cfg;
  cfg.backend = Backend::mps;
  cfg.drive.theta_cutoff = 1e-3;
  const RunRecord r = run_bfdcqo(p, cfg);
  std::printf("bfdcqo  weight %.4f  final entropy %.4f\n", -r.best_energy, *r.iterations.back().entropy);

  AnnealParams sa;
  sa.reads = 100;
  sa.sweeps = 200;
  std::printf("sa      weight %.4f\n", -simulated_annealing(p, sa, 1).energy);
  std::printf("tabu    weight %.4f\n", -tabu_search(p, TabuParams{}, 1).energy);
  std::printf("ls      weight %.4f\n", -local_search(p, 50, 100, 1).energy);
}
