// Copyright 2026 The Kinex Authors
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

// Cost of one nullspace perturbation attempt as the chain grows, with and
// without a holonomic constraint closing the chain into a loop.

#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "kinex/constraints.hpp"
#include "kinex/linkage.hpp"
#include "kinex/metric.hpp"
#include "kinex/perturbation.hpp"
#include "kinex/rng.hpp"

namespace {

using namespace kinex;

std::vector<Atom> zigzag(int n) {
  const double b = 1.54;
  const double half = 34.0 * std::numbers::pi / 180.0;
  std::vector<Atom> atoms;
  for (int k = 0; k < n; ++k) {
    Atom a;
    a.id = k + 1;
    a.element = "C";
    a.position = Vec3(k * b * std::cos(half), 0, (k % 2) * b * std::sin(half));
    a.vdw_radius = 1.70;
    a.covalent_radius = 0.77;
    atoms.push_back(a);
  }
  return atoms;
}

struct Bed {
  KinematicLinkage linkage;
  Metric metric;
  CollisionModel collision;
  FkResult fk0;
  NikSolver solver;
  NikSolver::Seed seed;

  Bed(int n, bool closed)
      : linkage(build(n, closed)),
        metric(linkage),
        collision(linkage, {}),
        fk0(linkage.forward_kinematics(linkage.zero_conformation())),
        solver(linkage, metric, collision, gather_constraints(linkage, fk0), fk0),
        seed(solver.prepare_seed(linkage.zero_conformation())) {}

  static KinematicLinkage build(int n, bool closed) {
    std::vector<BondSpec> bonds;
    for (int k = 1; k < n; ++k) bonds.push_back({k, k + 1, BondOrder::single});
    // The closing bond leaves the spanning tree and becomes a five-row
    // holonomic closure constraint.
    if (closed) bonds.push_back({1, n, BondOrder::single});
    return build_linkage(zigzag(n), bonds);
  }
};

void nik_step(benchmark::State& state, bool closed) {
  const Bed bed(static_cast<int>(state.range(0)), closed);
  Rng rng = make_substream(31, static_cast<std::uint64_t>(state.range(0)), closed ? 1 : 0);
  long long accepted = 0;
  for (auto _ : state) {
    const PerturbationResult res = bed.solver.perturb(bed.seed, 0.2, 0, rng);
    accepted += res.status == NikStatus::accepted ? 1 : 0;
    benchmark::DoNotOptimize(res);
  }
  state.counters["dofs"] = static_cast<double>(bed.linkage.dof_count());
  state.counters["accept_rate"] =
      static_cast<double>(accepted) / static_cast<double>(state.iterations());
}

void BM_NikStepFree(benchmark::State& state) { nik_step(state, false); }
void BM_NikStepClosedLoop(benchmark::State& state) { nik_step(state, true); }

BENCHMARK(BM_NikStepFree)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NikStepClosedLoop)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

}  // namespace
