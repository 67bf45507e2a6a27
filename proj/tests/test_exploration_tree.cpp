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
#include <set>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "kinex/error.hpp"
#include "kinex/exploration_tree.hpp"
#include "kinex/rng.hpp"
#include "helpers.hpp"

namespace {

using namespace kinex;

// Flat (unwrapped) metric so configurations can sit at arbitrary distances.
struct FlatSpace {
  KinematicLinkage linkage;
  Metric metric;
  FlatSpace()
      : linkage(kinex::test::chain_linkage(2)),
        metric(linkage, flat_config()) {}
  static MetricConfig flat_config() {
    MetricConfig c;
    c.wrap = false;
    return c;
  }
  Eigen::VectorXd at(double theta) const {
    Eigen::VectorXd q = linkage.zero_conformation();
    q[6] = theta;
    return q;
  }
};

TEST_CASE("a fresh tree holds just the root") {
  FlatSpace space;
  const ExplorationTree tree(space.metric, space.at(0));
  CHECK(tree.size() == 1);
  CHECK(tree.node(0).id == 0);
  CHECK(tree.node(0).parent_id == -1);
  CHECK(tree.node(0).enclosing_radius == 0.0);
  CHECK(tree.node(0).children.empty());
  CHECK(tree.distance_computations() == 0);
}

TEST_CASE("collect on a single node costs one distance computation") {
  FlatSpace space;
  const ExplorationTree tree(space.metric, space.at(0));
  const auto result = tree.bvh_collect(0, 1.0);
  CHECK(result == std::vector<int>{0});
  CHECK(tree.distance_computations() == 1);
}

TEST_CASE("inserting a child raises every ancestor radius") {
  FlatSpace space;
  ExplorationTree tree(space.metric, space.at(0));
  const int a = tree.insert(space.at(1.5), 0);
  CHECK(a == 1);
  CHECK(tree.node(0).enclosing_radius == doctest::Approx(1.5));
  CHECK(tree.node(0).children == std::vector<int>{1});
  CHECK(tree.distance_computations() == 1);

  const int b = tree.insert(space.at(2.25), a);
  CHECK(b == 2);
  CHECK(tree.node(1).enclosing_radius == doctest::Approx(0.75));
  CHECK(tree.node(0).enclosing_radius == doctest::Approx(2.25));
  CHECK(tree.distance_computations() == 3);  // path of length two

  // A short hop does not shrink anything.
  tree.insert(space.at(2.0), b);
  CHECK(tree.node(0).enclosing_radius == doctest::Approx(2.25));
}

TEST_CASE("a whole far subtree is pruned by the enclosing radius bound") {
  FlatSpace space;
  ExplorationTree tree(space.metric, space.at(0));
  const int child = tree.insert(space.at(10.0), 0);
  tree.insert(space.at(15.0), child);
  REQUIRE(tree.node(child).enclosing_radius == doctest::Approx(5.0));

  const long long before = tree.distance_computations();
  const auto result = tree.bvh_collect(0, 1.0);
  // 10 > 3*1 + 5: the child is dropped and its subtree never visited.
  CHECK(result == std::vector<int>{0});
  CHECK(tree.distance_computations() - before == 2);
}

TEST_CASE("ids must exist for node access, insert, and collect") {
  FlatSpace space;
  ExplorationTree tree(space.metric, space.at(0));
  CHECK_THROWS_AS(tree.node(1), ModelError);
  CHECK_THROWS_AS(tree.node(-1), ModelError);
  CHECK_THROWS_AS(tree.insert(space.at(1), 5), ModelError);
  CHECK_THROWS_AS(tree.bvh_collect(2, 1.0), ModelError);
}

TEST_CASE("enclosing radii are tight over all descendants") {
  const KinematicLinkage l = kinex::test::chain_linkage(8);
  const Metric metric(l);
  ExplorationTree tree(metric, l.zero_conformation());
  Rng rng = make_substream(71, 0, 0);
  while (tree.size() < 300) {
    const int parent = int(uniform_index(rng, tree.size()));
    Eigen::VectorXd q = tree.node(parent).q;
    for (int d = 6; d < l.dof_count(); ++d) q[d] += uniform_in(rng, -0.8, 0.8);
    tree.insert(l.wrap(q), parent);
  }

  // Collect descendants bottom-up.
  std::vector<std::vector<int>> descendants(tree.size());
  for (int id = tree.size() - 1; id >= 1; --id) {
    const int p = tree.node(id).parent_id;
    descendants[p].push_back(id);
    for (int d : descendants[id]) descendants[p].push_back(d);
  }
  for (int id = 0; id < tree.size(); ++id) {
    double max_d = 0;
    for (int d : descendants[id])
      max_d = std::max(max_d, metric.distance(tree.node(id).q, tree.node(d).q));
    CHECK(tree.node(id).enclosing_radius == max_d);
  }
}

TEST_CASE("collect never misses a node within three radii") {
  const KinematicLinkage l = kinex::test::chain_linkage(8);
  const Metric metric(l);
  ExplorationTree tree(metric, l.zero_conformation());
  Rng rng = make_substream(72, 0, 0);
  while (tree.size() < 400) {
    const int parent = int(uniform_index(rng, tree.size()));
    Eigen::VectorXd q = tree.node(parent).q;
    for (int d = 6; d < l.dof_count(); ++d) q[d] += uniform_in(rng, -0.6, 0.6);
    tree.insert(l.wrap(q), parent);
  }
  for (int trial = 0; trial < 30; ++trial) {
    const int seed = int(uniform_index(rng, tree.size()));
    const double r = uniform_in(rng, 0.05, 1.0);
    const auto collected = tree.bvh_collect(seed, r);
    const std::set<int> in_set(collected.begin(), collected.end());
    for (int id = 0; id < tree.size(); ++id) {
      const double d = metric.distance(tree.node(id).q, tree.node(seed).q);
      if (d <= 3 * r) {
        CHECK(in_set.count(id) == 1);
      } else if (in_set.count(id)) {
        // Bridge nodes may appear, but only within the pruning bound.
        CHECK(d <= 3 * r + tree.node(id).enclosing_radius);
      }
    }
  }
}

TEST_CASE("external distance computations can be charged to the tree") {
  FlatSpace space;
  const ExplorationTree tree(space.metric, space.at(0));
  tree.add_distance_computations(7);
  tree.add_distance_computations(3);
  CHECK(tree.distance_computations() == 10);
}

TEST_CASE("serialize and parse round trip bit for bit") {
  const KinematicLinkage l = kinex::test::chain_linkage(4);
  const Metric metric(l);
  ExplorationTree tree(metric, l.zero_conformation());
  Rng rng = make_substream(73, 0, 0);
  while (tree.size() < 60) {
    const int parent = int(uniform_index(rng, tree.size()));
    Eigen::VectorXd q = tree.node(parent).q;
    for (int d = 0; d < l.dof_count(); ++d) q[d] += uniform_in(rng, -1.0, 1.0);
    tree.insert(l.wrap(q), parent);
  }
  std::ostringstream first;
  tree.serialize(first);

  std::istringstream in(first.str());
  const ExplorationTree parsed = ExplorationTree::parse(in, metric);
  REQUIRE(parsed.size() == tree.size());
  for (int id = 0; id < tree.size(); ++id) {
    CHECK(parsed.node(id).parent_id == tree.node(id).parent_id);
    CHECK(parsed.node(id).enclosing_radius == tree.node(id).enclosing_radius);
    CHECK(parsed.node(id).children == tree.node(id).children);
    CHECK((parsed.node(id).q - tree.node(id).q).cwiseAbs().maxCoeff() == 0.0);
  }
  std::ostringstream second;
  parsed.serialize(second);
  CHECK(first.str() == second.str());
}

TEST_CASE("parse rejects malformed trees") {
  FlatSpace space;
  const auto expect_parse_error = [&](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(ExplorationTree::parse(in, space.metric), ParseError);
  };
  expect_parse_error("");                               // no nodes
  expect_parse_error("1 -1 0 0.5\n");                   // ids not consecutive
  expect_parse_error("0 -1 0 0.5\n1 3 0 0.5\n");        // parent after child
  expect_parse_error("0 -1 -2 0.5\n");                  // negative radius
  expect_parse_error("0 0 0 0.5\n");                    // root must have -1
  expect_parse_error("x -1 0 0.5\n");                   // junk header
}

}  // namespace
