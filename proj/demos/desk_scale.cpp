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

// Ten-spin nearest-neighbour 3-body glass: approximation ratio and distance
// to solution per iteration, statevector backend.

#include <bfdcqo/all.hpp>

#include <cstdio>

int main(int argc, char** argv) {
  using namespace bfdcqo;
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 1;
  const HuboProblem p = gen_nn_spin_glass(10, seed);

  BfdcqoConfig cfg;
  cfg.seed = seed;
  const RunRecord r = run_bfdcqo(p, cfg);

  std::printf("E0 = %.6f (%s)\n", *r.e0, r.e0_source.c_str());
  std::printf("%4s %-16s %8s %8s %12s\n", "iter", "update", "AR", "DS", "best E");
  for (const auto& it : r.iterations)
    std::printf("%4zu %-16s %8.4f %8.4f %12.6f\n", it.iteration, it.strategy.empty() ? "-" : it.strategy.c_str(),
                *it.ar, *it.ds, it.best_energy);
  std::printf("best %s at iteration %zu\n", r.best_bits.c_str(), r.best_iteration);
}
