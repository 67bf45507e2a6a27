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

// Shared fixtures and independent oracles. Every oracle here deliberately
// re-derives its result through a different algorithm than the library so
// the two implementations check each other.

#ifndef KINEX_TESTS_HELPERS_HPP_
#define KINEX_TESTS_HELPERS_HPP_

#include <array>
#include <functional>
#include <vector>

#include "kinex/collision.hpp"
#include "kinex/linkage.hpp"
#include "kinex/rng.hpp"

namespace kinex::test {

Atom make_atom(int id, const std::string& element, const Vec3& p);

// n carbons in a zigzag, single bonds, 6 + (n-1) DOFs.
std::vector<Atom> zigzag_carbons(int n);
KinematicLinkage chain_linkage(int n);

struct RandomMolecule {
  std::vector<Atom> atoms;
  std::vector<BondSpec> bonds;
};

// Random tree-shaped molecule: every atom after the first bonds to a random
// earlier atom at distance 1.5 in a random direction; a fraction of bonds is
// tagged double so rigid bodies of several atoms appear.
RandomMolecule random_tree_molecule(Rng& rng, int atom_count, double double_fraction);

Eigen::VectorXd random_conformation(const KinematicLinkage& l, Rng& rng, double amplitude);

// Central finite differences of forward kinematics, h = 1e-6.
Eigen::Matrix3Xd fd_position_jacobian(const KinematicLinkage& l, const Eigen::VectorXd& q,
                                      int atom_id);

// Independent forward kinematics: explicit 4x4 homogeneous matrices composed
// root to leaf, Rodrigues rotation written out by hand.
std::vector<Vec3> matrix_stack_fk(const KinematicLinkage& l, const Eigen::VectorXd& q);

// O(N^2) all-pairs clash scan.
ClashReport brute_force_clashes(const std::vector<CollisionSphere>& spheres, double scale,
                                const std::function<bool(int, int)>& exclude);

// Numerical rank by modified Gram-Schmidt on the rows.
int gram_schmidt_rank(const Eigen::MatrixXd& m, double rel_tol);

// Minimal superposed RMSD by the quaternion characteristic-polynomial
// method (largest eigenvalue of the 4x4 key matrix).
double qcp_rmsd(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

// All 5-cycles of an undirected graph as sorted atom-id sets, by exhaustive
// path enumeration.
std::vector<std::array<int, 5>> five_cycles_oracle(const MolecularGraph& g);

}  // namespace kinex::test

#endif  // KINEX_TESTS_HELPERS_HPP_
