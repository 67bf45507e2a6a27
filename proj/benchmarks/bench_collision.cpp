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

// Spatial hash grid against the quadratic all-pairs scan. The grid is
// rebuilt every iteration, matching how the collision model treats each new
// conformation.

#include <algorithm>
#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "kinex/collision.hpp"
#include "kinex/rng.hpp"

namespace {

using namespace kinex;

struct Scene {
  std::vector<CollisionSphere> spheres;
  std::vector<Vec3> points;
};

Scene random_scene(int n) {
  Rng rng = make_substream(2026, static_cast<std::uint64_t>(n), 0);
  // Box scaled to keep a few percent of the spheres in contact.
  const double box = std::cbrt(static_cast<double>(n)) * 2.4;
  Scene s;
  for (int i = 0; i < n; ++i) {
    CollisionSphere sphere;
    sphere.id = i + 1;
    sphere.position = Vec3(uniform_in(rng, 0, box), uniform_in(rng, 0, box),
                           uniform_in(rng, 0, box));
    sphere.radius = uniform_in(rng, 0.8, 1.6);
    s.points.push_back(sphere.position);
    s.spheres.push_back(sphere);
  }
  return s;
}

void BM_GridClashScan(benchmark::State& state) {
  const Scene s = random_scene(static_cast<int>(state.range(0)));
  const auto exclude = [](int, int) { return false; };
  long long pairs = 0;
  for (auto _ : state) {
    const SpatialHashGrid grid(s.points, 2.0);
    const ClashReport report = find_clashes(grid, s.spheres, 0.75, exclude);
    pairs = static_cast<long long>(report.pairs.size());
    benchmark::DoNotOptimize(report);
  }
  state.counters["clash_pairs"] = static_cast<double>(pairs);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AllPairsClashScan(benchmark::State& state) {
  const Scene s = random_scene(static_cast<int>(state.range(0)));
  const int n = static_cast<int>(s.spheres.size());
  long long pairs = 0;
  for (auto _ : state) {
    std::vector<ClashPair> found;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double d = (s.spheres[i].position - s.spheres[j].position).norm();
        const double threshold = 0.75 * (s.spheres[i].radius + s.spheres[j].radius);
        if (d < threshold)
          found.push_back({s.spheres[i].id, s.spheres[j].id, threshold - d});
      }
    }
    std::sort(found.begin(), found.end(),
              [](const ClashPair& a, const ClashPair& b) { return a.overlap > b.overlap; });
    pairs = static_cast<long long>(found.size());
    benchmark::DoNotOptimize(found);
  }
  state.counters["clash_pairs"] = static_cast<double>(pairs);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_GridClashScan)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AllPairsClashScan)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
