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

#ifndef KINEX_EXPLORATION_TREE_HPP_
#define KINEX_EXPLORATION_TREE_HPP_

#include <Eigen/Core>
#include <atomic>
#include <iosfwd>
#include <utility>
#include <vector>

#include "kinex/metric.hpp"

namespace kinex {

struct BvhNode {
  int id = -1;
  int parent_id = -1;  // -1 for the root
  std::vector<int> children;
  // Upper bound on the metric distance from this node to any descendant.
  double enclosing_radius = 0;
  Eigen::VectorXd q;
};

// Tree of sampled conformations doubling as a bounding-volume hierarchy:
// each node carries the enclosing radius of its subtree, which lets a
// neighbor query prune whole branches. Insertions are single-writer;
// concurrent reads are fine while no insertion runs.
class ExplorationTree {
 public:
  ExplorationTree(const Metric& metric, Eigen::VectorXd q_root);

  // Movable despite the atomic counter; never move while another thread
  // touches the source.
  ExplorationTree(ExplorationTree&& other) noexcept
      : metric_(other.metric_),
        nodes_(std::move(other.nodes_)),
        distance_computations_(other.distance_computations_.load()) {}
  ExplorationTree& operator=(ExplorationTree&& other) noexcept {
    metric_ = other.metric_;
    nodes_ = std::move(other.nodes_);
    distance_computations_.store(other.distance_computations_.load());
    return *this;
  }

  int size() const { return static_cast<int>(nodes_.size()); }
  const BvhNode& node(int id) const;
  const std::vector<BvhNode>& nodes() const { return nodes_; }

  // Adds a leaf under parent_id and widens every ancestor's enclosing radius
  // to cover it. Radii never shrink.
  int insert(const Eigen::VectorXd& q, int parent_id);

  // Depth-first collection of every node that could lie within 3r of the
  // seed. A subtree rooted at distance d is pruned when d > 3r + R^B, and
  // its root is dropped too: at more than 3r away it can never be closer
  // than r to a sample placed at most 2r from the seed.
  std::vector<int> bvh_collect(int seed_id, double r) const;

  long long distance_computations() const { return distance_computations_.load(); }
  void add_distance_computations(long long k) const { distance_computations_ += k; }

  // Line format: id parent_id enclosing_radius dof values, full precision.
  void serialize(std::ostream& out) const;
  static ExplorationTree parse(std::istream& in, const Metric& metric);

  const Metric& metric() const { return *metric_; }

 private:
  const Metric* metric_;
  std::vector<BvhNode> nodes_;
  mutable std::atomic<long long> distance_computations_{0};
};

}  // namespace kinex

#endif  // KINEX_EXPLORATION_TREE_HPP_
