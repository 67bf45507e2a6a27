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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include <doctest.h>

#include "kinex/rigid_body.hpp"
#include "kinex/rng.hpp"
#include "helpers.hpp"

namespace {

using namespace kinex;
using kinex::test::make_atom;

MolecularGraph graph_of(const std::vector<Atom>& atoms,
                        const std::vector<BondSpec>& bonds) {
  return build_molecular_graph(atoms, bonds);
}

// Reference partition: union-find over bonds that must be contracted, where
// the contracted set is (double, partial_double, ring5 tags) plus every bond
// on some simple 5-cycle found by the exhaustive oracle.
std::vector<std::set<int>> oracle_partition(const MolecularGraph& g) {
  std::map<int, int> parent;
  for (int id : g.atom_ids()) parent[id] = id;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& cycle : kinex::test::five_cycles_oracle(g))
    for (int i = 1; i < 5; ++i) parent[find(cycle[0])] = find(cycle[i]);
  for (const Bond& b : g.bonds())
    if (b.order != BondOrder::single) parent[find(b.atom_i)] = find(b.atom_j);
  std::map<int, std::set<int>> groups;
  for (int id : g.atom_ids()) groups[find(id)].insert(id);
  std::vector<std::set<int>> out;
  for (auto& [root, members] : groups) out.push_back(members);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
  return out;
}

void check_against_oracle(const MolecularGraph& g) {
  const RigidBodyGraph rb = contract_to_rigid_bodies(g);
  const auto expected = oracle_partition(g);
  REQUIRE(rb.bodies.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const std::set<int> got(rb.bodies[i].begin(), rb.bodies[i].end());
    CHECK(got == expected[i]);
    CHECK(std::is_sorted(rb.bodies[i].begin(), rb.bodies[i].end()));
    for (int id : rb.bodies[i]) CHECK(rb.body_index(id) == int(i));
  }
  // Rotatable edges: exactly the single bonds crossing distinct oracle groups.
  std::map<int, int> group_of;
  for (std::size_t i = 0; i < expected.size(); ++i)
    for (int id : expected[i]) group_of[id] = int(i);
  std::set<std::pair<int, int>> expected_edges;
  for (const Bond& b : g.bonds()) {
    if (b.order != BondOrder::single) continue;
    if (group_of[b.atom_i] != group_of[b.atom_j])
      expected_edges.insert({b.atom_i, b.atom_j});
  }
  std::set<std::pair<int, int>> got_edges;
  for (const RigidBodyEdge& e : rb.edges) {
    CHECK(e.atom_i < e.atom_j);
    CHECK(rb.body_index(e.atom_i) == e.body_i);
    CHECK(rb.body_index(e.atom_j) == e.body_j);
    got_edges.insert({e.atom_i, e.atom_j});
  }
  CHECK(got_edges == expected_edges);
}

TEST_CASE("a double bond fuses its two atoms into one body") {
  std::vector<Atom> atoms = {make_atom(1, "C", {0, 0, 0}),
                             make_atom(2, "C", {1.33, 0, 0})};
  std::vector<BondSpec> bonds = {{1, 2, BondOrder::double_bond}};
  const RigidBodyGraph rb = contract_to_rigid_bodies(graph_of(atoms, bonds));
  REQUIRE(rb.bodies.size() == 1);
  CHECK(rb.bodies[0] == std::vector<int>{1, 2});
  CHECK(rb.edges.empty());
}

TEST_CASE("an all-single chain keeps one body per atom") {
  std::vector<Atom> atoms;
  std::vector<BondSpec> bonds;
  for (int i = 1; i <= 4; ++i) {
    atoms.push_back(make_atom(i, "C", {1.5 * i, 0, 0}));
    if (i > 1) bonds.push_back({i - 1, i, BondOrder::single});
  }
  const RigidBodyGraph rb = contract_to_rigid_bodies(graph_of(atoms, bonds));
  CHECK(rb.bodies.size() == 4);
  CHECK(rb.edges.size() == 3);
}

TEST_CASE("partial double and ring5 tags contract too") {
  std::vector<Atom> atoms = {make_atom(1, "C", {0, 0, 0}),
                             make_atom(2, "N", {1.33, 0, 0}),
                             make_atom(3, "C", {2.6, 0.5, 0})};
  std::vector<BondSpec> bonds = {{1, 2, BondOrder::partial_double},
                                 {2, 3, BondOrder::ring5}};
  const RigidBodyGraph rb = contract_to_rigid_bodies(graph_of(atoms, bonds));
  REQUIRE(rb.bodies.size() == 1);
  CHECK(rb.bodies[0] == std::vector<int>{1, 2, 3});
}

TEST_CASE("a geometric pentagon collapses even when tagged single") {
  // Regular pentagon 1..5 of single bonds plus an exocyclic atom 6 off atom 1.
  std::vector<Atom> atoms;
  for (int i = 0; i < 5; ++i) {
    const double a = 2 * std::numbers::pi * i / 5;
    atoms.push_back(make_atom(i + 1, "C", {std::cos(a), std::sin(a), 0}));
  }
  atoms.push_back(make_atom(6, "C", {2.5, 0, 0}));
  std::vector<BondSpec> bonds = {{1, 2, BondOrder::single}, {2, 3, BondOrder::single},
                                 {3, 4, BondOrder::single}, {4, 5, BondOrder::single},
                                 {1, 5, BondOrder::single}, {1, 6, BondOrder::single}};
  const MolecularGraph g = graph_of(atoms, bonds);

  const auto rings = find_pentameric_rings(g);
  REQUIRE(rings.size() == 1);
  CHECK(rings[0][0] == 1);

  const RigidBodyGraph rb = contract_to_rigid_bodies(g);
  REQUIRE(rb.bodies.size() == 2);
  CHECK(rb.bodies[0] == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(rb.bodies[1] == std::vector<int>{6});
  REQUIRE(rb.edges.size() == 1);
  CHECK(rb.edges[0].atom_i == 1);
  CHECK(rb.edges[0].atom_j == 6);
}

TEST_CASE("pentameric ring search matches the exhaustive oracle") {
  Rng rng = make_substream(11, 0, 0);
  for (int trial = 0; trial < 40; ++trial) {
    auto mol = kinex::test::random_tree_molecule(rng, 12, 0.2);
    // Sprinkle in extra bonds so cycles of several lengths appear.
    const int extra = int(uniform_index(rng, 4));
    for (int e = 0; e < extra; ++e) {
      int a = 1 + int(uniform_index(rng, mol.atoms.size()));
      int b = 1 + int(uniform_index(rng, mol.atoms.size()));
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      bool dup = false;
      for (const auto& s : mol.bonds) dup = dup || (s.atom_i == a && s.atom_j == b);
      if (!dup) mol.bonds.push_back({a, b, BondOrder::single});
    }
    const MolecularGraph g = graph_of(mol.atoms, mol.bonds);

    std::set<std::array<int, 5>> expected;
    for (auto c : kinex::test::five_cycles_oracle(g)) expected.insert(c);
    std::set<std::array<int, 5>> got;
    for (auto c : find_pentameric_rings(g)) {
      std::sort(c.begin(), c.end());  // rings come back in traversal order
      got.insert(c);
    }
    CHECK(got == expected);

    check_against_oracle(g);
  }
}

TEST_CASE("bodies are ordered by smallest atom id") {
  std::vector<Atom> atoms = {make_atom(10, "C", {0, 0, 0}),
                             make_atom(3, "C", {1.5, 0, 0}),
                             make_atom(7, "C", {3.0, 0, 0})};
  std::vector<BondSpec> bonds = {{3, 10, BondOrder::single},
                                 {3, 7, BondOrder::single}};
  const RigidBodyGraph rb = contract_to_rigid_bodies(graph_of(atoms, bonds));
  REQUIRE(rb.bodies.size() == 3);
  CHECK(rb.bodies[0] == std::vector<int>{3});
  CHECK(rb.bodies[1] == std::vector<int>{7});
  CHECK(rb.bodies[2] == std::vector<int>{10});
}

}  // namespace
