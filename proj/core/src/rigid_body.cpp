// Copyright 2026 The kinex Authors
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

#include "kinex/rigid_body.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace kinex {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

std::vector<std::array<int, 5>> find_pentameric_rings(const MolecularGraph& g) {
  const auto& ids = g.atom_ids();
  std::vector<std::array<int, 5>> rings;
  // Depth-4 walks from each start vertex back to itself. Restricting the
  // interior vertices to ids above the start and forcing the first step
  // below the last makes each cycle appear exactly once.
  for (int s : ids) {
    for (int v1 : g.neighbors(s)) {
      if (v1 <= s) continue;
      for (int v2 : g.neighbors(v1)) {
        if (v2 <= s || v2 == v1) continue;
        for (int v3 : g.neighbors(v2)) {
          if (v3 <= s || v3 == v1 || v3 == v2) continue;
          for (int v4 : g.neighbors(v3)) {
            if (v4 <= s || v4 == v1 || v4 == v2 || v4 == v3) continue;
            if (v1 >= v4) continue;
            if (g.has_bond(v4, s)) rings.push_back({s, v1, v2, v3, v4});
          }
        }
      }
    }
  }
  return rings;
}

RigidBodyGraph contract_to_rigid_bodies(const MolecularGraph& g) {
  const auto& ids = g.atom_ids();
  UnionFind uf(ids.size());

  for (const Bond& b : g.bonds()) {
    if (b.order != BondOrder::single) {
      uf.unite(g.index_of(b.atom_i), g.index_of(b.atom_j));
    }
  }
  for (const auto& ring : find_pentameric_rings(g)) {
    for (int k = 0; k < 5; ++k) {
      uf.unite(g.index_of(ring[k]), g.index_of(ring[(k + 1) % 5]));
    }
  }

  RigidBodyGraph out;
  // Group in ascending id order regardless of how the atoms arrived, so the
  // bodies come out sorted internally and ordered by their smallest member.
  std::vector<int> by_id(ids.size());
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(), [&](int a, int b) { return ids[a] < ids[b]; });
  std::unordered_map<int, int> root_to_body;
  for (int i : by_id) {
    const int root = uf.find(i);
    auto [it, fresh] = root_to_body.try_emplace(root, static_cast<int>(out.bodies.size()));
    if (fresh) out.bodies.emplace_back();
    out.bodies[it->second].push_back(ids[i]);
    out.body_of[ids[i]] = it->second;
  }

  for (const Bond& b : g.bonds()) {
    const int bi = out.body_of[b.atom_i];
    const int bj = out.body_of[b.atom_j];
    if (bi != bj) out.edges.push_back({bi, bj, b.atom_i, b.atom_j});
  }
  return out;
}

}  // namespace kinex
