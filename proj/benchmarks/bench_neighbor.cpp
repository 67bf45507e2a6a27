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

// Pruned neighbor collection against a full linear scan on trees grown the
// way the Poisson planner grows them: children placed between r and 2r from
// a random parent.

#include <vector>

#include <benchmark/benchmark.h>

#include "kinex/exploration_tree.hpp"
#include "kinex/linkage.hpp"
#include "kinex/metric.hpp"
#include "kinex/rng.hpp"

namespace {

using namespace kinex;

constexpr double kRadius = 0.4;

KinematicLinkage carbon_chain(int n) {
  std::vector<Atom> atoms;
  std::vector<BondSpec> bonds;
  for (int k = 0; k < n; ++k) {
    Atom a;
    a.id = k + 1;
    a.element = "C";
    a.position = Vec3(1.28 * k, 0, 0.43 * (k % 2));
    a.vdw_radius = 1.70;
    a.covalent_radius = 0.77;
    atoms.push_back(a);
    if (k > 0) bonds.push_back({k, k + 1, BondOrder::single});
  }
  return build_linkage(atoms, bonds);
}

struct Bed {
  KinematicLinkage linkage;
  Metric metric;
  ExplorationTree tree;

  explicit Bed(int nodes)
      : linkage(carbon_chain(24)),
        metric(linkage),
        tree(metric, linkage.zero_conformation()) {
    Rng rng = make_substream(11, static_cast<std::uint64_t>(nodes), 0);
    for (int i = 1; i < nodes; ++i) {
      const int parent = static_cast<int>(uniform_index(rng, tree.size()));
      const Eigen::VectorXd q =
          linkage.wrap(tree.node(parent).q +
                       metric.random_direction(rng) * uniform_in(rng, kRadius, 2 * kRadius));
      tree.insert(q, parent);
    }
  }
};

void BM_BvhCollect(benchmark::State& state) {
  const Bed bed(static_cast<int>(state.range(0)));
  Rng rng = make_substream(12, 0, 0);
  const long long before = bed.tree.distance_computations();
  long long calls = 0;
  for (auto _ : state) {
    const int seed = static_cast<int>(uniform_index(rng, bed.tree.size()));
    const std::vector<int> ids = bed.tree.bvh_collect(seed, kRadius);
    benchmark::DoNotOptimize(ids);
    ++calls;
  }
  state.counters["dist_per_call"] =
      static_cast<double>(bed.tree.distance_computations() - before) /
      static_cast<double>(calls);
}

void BM_LinearCollect(benchmark::State& state) {
  const Bed bed(static_cast<int>(state.range(0)));
  Rng rng = make_substream(12, 0, 0);
  for (auto _ : state) {
    const int seed = static_cast<int>(uniform_index(rng, bed.tree.size()));
    const Eigen::VectorXd& sq = bed.tree.node(seed).q;
    std::vector<int> ids;
    for (int i = 0; i < bed.tree.size(); ++i)
      if (bed.metric.distance(sq, bed.tree.node(i).q) <= 3 * kRadius) ids.push_back(i);
    benchmark::DoNotOptimize(ids);
  }
  state.counters["dist_per_call"] = static_cast<double>(state.range(0));
}

BENCHMARK(BM_BvhCollect)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LinearCollect)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

}  // namespace
