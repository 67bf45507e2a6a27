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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

#include <doctest.h>

#include "kinex/elements.hpp"
#include "kinex/molecular_graph.hpp"
#include "kinex/rng.hpp"
#include "helpers.hpp"

namespace {

using namespace kinex;
using kinex::test::make_atom;

TEST_CASE("standard radii carry the expected common-element values") {
  const RadiiTable table = RadiiTable::standard();
  struct Row {
    const char* element;
    double vdw;
    double cov;
  };
  const Row rows[] = {
      {"H", 1.20, 0.31}, {"C", 1.70, 0.77}, {"N", 1.55, 0.70},
      {"O", 1.52, 0.66}, {"S", 1.80, 1.05},
  };
  for (const Row& row : rows) {
    const auto r = table.lookup(row.element);
    REQUIRE(r.has_value());
    CHECK(r->vdw == doctest::Approx(row.vdw));
    CHECK(r->covalent == doctest::Approx(row.cov));
  }
  CHECK_FALSE(table.lookup("Xx").has_value());
}

TEST_CASE("radius overrides replace table entries") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "kinex_radii_override.txt";
  {
    std::ofstream out(path);
    out << "# element vdw covalent\n";
    out << "C 2.00 0.80\n";
    out << "Zz 1.00 0.50\n";
  }
  RadiiTable table = RadiiTable::standard();
  table.load_overrides(path.string());
  CHECK(table.lookup("C")->vdw == doctest::Approx(2.00));
  CHECK(table.lookup("C")->covalent == doctest::Approx(0.80));
  CHECK(table.lookup("Zz")->vdw == doctest::Approx(1.00));
  CHECK(table.lookup("O")->vdw == doctest::Approx(1.52));
  fs::remove(path);
}

TEST_CASE("bond inference uses the covalent cutoff") {
  // Carbons 1.4 A apart: 1.4 <= 0.77 + 0.77 + 0.4, bonded.
  std::vector<Atom> close = {make_atom(1, "C", {0, 0, 0}),
                             make_atom(2, "C", {1.4, 0, 0})};
  const MolecularGraph g1 = build_molecular_graph(close);
  CHECK(g1.has_bond(1, 2));
  CHECK(g1.bonds().size() == 1);

  // 3.0 A apart: no bond.
  std::vector<Atom> far = {make_atom(1, "C", {0, 0, 0}),
                           make_atom(2, "C", {3.0, 0, 0})};
  const MolecularGraph g2 = build_molecular_graph(far);
  CHECK_FALSE(g2.has_bond(1, 2));
  CHECK(g2.bonds().empty());
}

TEST_CASE("explicit bonds are taken verbatim regardless of distance") {
  std::vector<Atom> atoms = {make_atom(1, "C", {0, 0, 0}),
                             make_atom(2, "C", {10, 0, 0})};
  std::vector<BondSpec> bonds = {{1, 2, BondOrder::single}};
  const MolecularGraph g = build_molecular_graph(atoms, bonds);
  CHECK(g.has_bond(1, 2));
  CHECK(g.bonds().size() == 1);
}

TEST_CASE("neighbors are sorted and bond lookups are symmetric") {
  std::vector<Atom> atoms = {
      make_atom(5, "C", {0, 0, 0}), make_atom(2, "C", {1.5, 0, 0}),
      make_atom(9, "C", {0, 1.5, 0}), make_atom(1, "C", {0, 0, 1.5})};
  std::vector<BondSpec> bonds = {{5, 2, BondOrder::single},
                                 {5, 9, BondOrder::single},
                                 {5, 1, BondOrder::single}};
  const MolecularGraph g = build_molecular_graph(atoms, bonds);
  const auto& nb = g.neighbors(5);
  CHECK(nb == std::vector<int>{1, 2, 9});
  CHECK(g.has_bond(2, 5));
  CHECK(g.has_bond(5, 2));
  REQUIRE(g.find_bond(9, 5) != nullptr);
  CHECK(g.find_bond(9, 5)->atom_i == 5);
  CHECK(g.find_bond(9, 5)->atom_j == 9);
  CHECK(g.find_bond(2, 9) == nullptr);
}

TEST_CASE("bond order overrides retag inferred bonds") {
  std::vector<Atom> atoms = {make_atom(1, "C", {0, 0, 0}),
                             make_atom(2, "C", {1.33, 0, 0}),
                             make_atom(3, "C", {2.8, 0, 0})};
  std::vector<BondOrderOverride> overrides = {
      {1, 2, BondOrder::double_bond}};
  const MolecularGraph g = build_molecular_graph(atoms, std::nullopt, overrides);
  REQUIRE(g.find_bond(1, 2) != nullptr);
  CHECK(g.find_bond(1, 2)->order == BondOrder::double_bond);
  REQUIRE(g.find_bond(2, 3) != nullptr);
  CHECK(g.find_bond(2, 3)->order == BondOrder::single);
}

TEST_CASE("pairs_within matches breadth-first graph distance") {
  // Path 1-2-3-4-5-6 plus a branch 3-7.
  std::vector<Atom> atoms;
  for (int i = 1; i <= 7; ++i) atoms.push_back(make_atom(i, "C", {double(i), 0, 0}));
  std::vector<BondSpec> bonds = {{1, 2, BondOrder::single}, {2, 3, BondOrder::single},
                                 {3, 4, BondOrder::single}, {4, 5, BondOrder::single},
                                 {5, 6, BondOrder::single}, {3, 7, BondOrder::single}};
  const MolecularGraph g = build_molecular_graph(atoms, bonds);

  // Oracle: Floyd-Warshall over the 7 atoms.
  const int n = 7;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, 1000));
  for (int i = 0; i < n; ++i) dist[i][i] = 0;
  for (const Bond& b : g.bonds()) {
    const int i = g.index_of(b.atom_i);
    const int j = g.index_of(b.atom_j);
    dist[i][j] = dist[j][i] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);

  for (int depth = 1; depth <= 4; ++depth) {
    std::set<std::pair<int, int>> expected;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (dist[i][j] <= depth) {
          const int a = g.atom_ids()[i];
          const int b = g.atom_ids()[j];
          expected.insert({std::min(a, b), std::max(a, b)});
        }
    const auto got_vec = g.pairs_within(depth);
    const std::set<std::pair<int, int>> got(got_vec.begin(), got_vec.end());
    CHECK(got == expected);
  }
}

}  // namespace
