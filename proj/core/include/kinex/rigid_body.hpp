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

#ifndef KINEX_RIGID_BODY_HPP_
#define KINEX_RIGID_BODY_HPP_

#include <array>
#include <unordered_map>
#include <vector>

#include "kinex/molecular_graph.hpp"

namespace kinex {

// A rotatable single bond between two rigid bodies. The atom pair defines
// the rotation axis; atom_i < atom_j as in the underlying Bond.
struct RigidBodyEdge {
  int body_i = -1;
  int body_j = -1;
  int atom_i = -1;
  int atom_j = -1;
};

// Partition of the atom set into rigid bodies plus the rotatable bonds
// between them. Bodies are sorted by their smallest atom id and each body
// lists its atom ids in increasing order.
struct RigidBodyGraph {
  std::vector<std::vector<int>> bodies;
  std::unordered_map<int, int> body_of;
  std::vector<RigidBodyEdge> edges;

  int body_index(int atom_id) const { return body_of.at(atom_id); }
};

// Contracts every bond tagged double, partial_double, or ring5, plus every
// bond that lies on a 5-membered cycle of the graph regardless of its tag.
// Whatever single bonds remain between distinct components become the
// rotatable edges.
RigidBodyGraph contract_to_rigid_bodies(const MolecularGraph& g);

// All simple 5-cycles of the graph, each as 5 atom ids in traversal order
// starting from the smallest id. Exposed for testing.
std::vector<std::array<int, 5>> find_pentameric_rings(const MolecularGraph& g);

}  // namespace kinex

#endif  // KINEX_RIGID_BODY_HPP_
