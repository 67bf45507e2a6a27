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

#include "kinex/exploration_tree.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "kinex/error.hpp"

namespace kinex {

ExplorationTree::ExplorationTree(const Metric& metric, Eigen::VectorXd q_root)
    : metric_(&metric) {
  BvhNode root;
  root.id = 0;
  root.q = std::move(q_root);
  nodes_.push_back(std::move(root));
}

const BvhNode& ExplorationTree::node(int id) const {
  if (id < 0 || id >= size()) throw ModelError("node id " + std::to_string(id) + " not in tree");
  return nodes_[id];
}

int ExplorationTree::insert(const Eigen::VectorXd& q, int parent_id) {
  if (parent_id < 0 || parent_id >= size()) {
    throw ModelError("insert parent " + std::to_string(parent_id) + " not in tree");
  }
  const int id = size();
  BvhNode n;
  n.id = id;
  n.parent_id = parent_id;
  n.q = q;
  nodes_.push_back(std::move(n));
  nodes_[parent_id].children.push_back(id);

  long long evals = 0;
  for (int a = parent_id; a >= 0; a = nodes_[a].parent_id) {
    const double d = metric_->distance(nodes_[a].q, nodes_[id].q);
    ++evals;
    if (d > nodes_[a].enclosing_radius) nodes_[a].enclosing_radius = d;
  }
  distance_computations_ += evals;
  return id;
}

std::vector<int> ExplorationTree::bvh_collect(int seed_id, double r) const {
  if (seed_id < 0 || seed_id >= size()) {
    throw ModelError("bvh_collect seed " + std::to_string(seed_id) + " not in tree");
  }
  const Eigen::VectorXd& q_seed = nodes_[seed_id].q;
  std::vector<int> result;
  std::vector<int> stack{0};
  long long evals = 0;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const BvhNode& n = nodes_[id];
    const double d = metric_->distance(n.q, q_seed);
    ++evals;
    if (d > 3 * r + n.enclosing_radius) continue;
    result.push_back(id);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  distance_computations_ += evals;
  return result;
}

void ExplorationTree::serialize(std::ostream& out) const {
  char buf[32];
  for (const BvhNode& n : nodes_) {
    out << n.id << ' ' << n.parent_id;
    std::snprintf(buf, sizeof(buf), "%.17g", n.enclosing_radius);
    out << ' ' << buf;
    for (int k = 0; k < n.q.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", n.q[k]);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

ExplorationTree ExplorationTree::parse(std::istream& in, const Metric& metric) {
  ExplorationTree tree(metric, Eigen::VectorXd());
  tree.nodes_.clear();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    BvhNode n;
    if (!(ss >> n.id >> n.parent_id >> n.enclosing_radius)) {
      throw ParseError("tree line " + std::to_string(lineno) + ": malformed header fields");
    }
    std::vector<double> dofs;
    double v;
    while (ss >> v) dofs.push_back(v);
    n.q = Eigen::Map<Eigen::VectorXd>(dofs.data(), static_cast<long>(dofs.size()));
    if (n.id != static_cast<int>(tree.nodes_.size())) {
      throw ParseError("tree line " + std::to_string(lineno) + ": ids must be consecutive");
    }
    if (n.parent_id >= n.id || (n.id == 0) != (n.parent_id == -1)) {
      throw ParseError("tree line " + std::to_string(lineno) + ": invalid parent id");
    }
    if (n.enclosing_radius < 0) {
      throw ParseError("tree line " + std::to_string(lineno) + ": negative enclosing radius");
    }
    if (n.parent_id >= 0) tree.nodes_[n.parent_id].children.push_back(n.id);
    tree.nodes_.push_back(std::move(n));
  }
  if (tree.nodes_.empty()) throw ParseError("tree file holds no nodes");
  return tree;
}

}  // namespace kinex
