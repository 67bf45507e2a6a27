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

#ifndef KINEX_LINKAGE_FILE_HPP_
#define KINEX_LINKAGE_FILE_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kinex/atom.hpp"
#include "kinex/collision.hpp"
#include "kinex/elements.hpp"
#include "kinex/molecular_graph.hpp"

namespace kinex {

// Parsed synthetic linkage description: explicit atoms, optional explicit
// bonds (absent section means inference), declared constraint pairs, and
// static obstacle spheres.
struct LinkageInput {
  std::vector<Atom> atoms;
  std::optional<std::vector<BondSpec>> bonds;
  std::vector<std::pair<int, int>> constraint_pairs;
  std::vector<Obstacle> obstacles;
};

// Text format with [atoms], [bonds], [constraints], [obstacles] sections,
// whitespace-delimited fields, and # comments:
//   atoms:        id element x y z [vdw covalent]
//   bonds:        atom_i atom_j [single|double|partial|ring5]
//   constraints:  atom_i atom_j
//   obstacles:    x y z radius
LinkageInput parse_linkage_file(const std::string& path,
                                const RadiiTable& radii = RadiiTable::standard());

// Writes one conformation plus topology in the same format; full precision,
// so a round trip reproduces positions exactly.
void write_linkage_file(const std::string& path, const std::vector<Atom>& atoms,
                        const std::vector<Vec3>& positions, const std::vector<Bond>& bonds,
                        const std::vector<std::pair<int, int>>& constraint_pairs,
                        const std::vector<Obstacle>& obstacles);

}  // namespace kinex

#endif  // KINEX_LINKAGE_FILE_HPP_
