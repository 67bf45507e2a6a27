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

#ifndef KINEX_CONSTRAINTS_HPP_
#define KINEX_CONSTRAINTS_HPP_

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "kinex/collision.hpp"
#include "kinex/geometry.hpp"
#include "kinex/linkage.hpp"

namespace kinex {

enum class ConstraintKind { hydrogen_bond, covalent_closure };

// Fixes the relative geometry of two rigid bodies except rotation about the
// constrained bond axis: five scalar rows, three for the relative position
// of the atom pair and two for relative angular motion across the axis.
struct HolonomicConstraint {
  ConstraintKind kind = ConstraintKind::hydrogen_bond;
  int atom_a = -1;  // hydrogen side for hydrogen bonds, else first endpoint
  int atom_b = -1;  // acceptor side, else second endpoint
  // Reference geometry at creation, for reporting.
  double bond_length = 0;
  double angle_a = 0;  // at atom_a, against its lowest-id other neighbor
  double angle_b = 0;  // at atom_b, against its lowest-id other neighbor
};

// Temporary one-row constraint forbidding relative motion of a clashing pair
// along their center line; sliding in the contact plane stays free. The
// normal is frozen at creation time.
struct ClashConstraint {
  int atom_i = -1;  // may be an obstacle id
  int atom_j = -1;
  Vec3 normal = Vec3::Zero();  // unit vector from i to j
};

struct ConstraintJacobian {
  Eigen::MatrixXd matrix;  // (5m + c) x n
  int holonomic_count = 0;
  int clash_count = 0;
  // row -> owning constraint: [0, m) holonomic index, m + k for clash k.
  std::vector<int> row_map;
};

struct NullspaceBasis {
  Eigen::MatrixXd basis;  // n x (n - rank), orthonormal columns
  double singular_value_cutoff = 0;
  int rank = 0;
};

// Reference pose of every holonomic constraint, captured at one conformation.
// Violations are measured as drift relative to these frames; the u vectors
// complete each bond axis to a frame so rotation about the axis is ignored.
struct ConstraintFrames {
  std::vector<Vec3> rel_ref;
  std::vector<Mat3> rot_a_ref;
  std::vector<Mat3> rot_b_ref;
  std::vector<Vec3> u1;
  std::vector<Vec3> u2;
};

struct HydrogenBondCriteria {
  double max_ha_distance = 2.5;    // Angstrom, hydrogen to acceptor
  double min_dha_angle_deg = 100;  // donor-hydrogen-acceptor
};

// Geometric donor-H...acceptor detection (donors and acceptors are N or O)
// plus explicit pairs, which bypass the geometric criterion. An explicit
// pair naming two heavy atoms is resolved through the donor's hydrogen
// nearest to the acceptor; a donor without hydrogens is skipped with a
// warning. Pairs inside one rigid body cannot constrain anything and are
// dropped (silently for detected pairs, error for explicit ones).
std::vector<HolonomicConstraint> detect_hydrogen_bonds(
    const KinematicLinkage& l, const FkResult& fk, const HydrogenBondCriteria& criteria = {},
    const std::vector<std::pair<int, int>>& explicit_pairs = {});

// One covalent_closure constraint per cycle-closing bond left out of the
// spanning tree.
std::vector<HolonomicConstraint> closure_constraints(const KinematicLinkage& l,
                                                     const FkResult& fk);

// Hydrogen bonds (detected + explicit) followed by covalent closures.
std::vector<HolonomicConstraint> gather_constraints(
    const KinematicLinkage& l, const FkResult& fk, const HydrogenBondCriteria& criteria = {},
    const std::vector<std::pair<int, int>>& explicit_pairs = {});

// Rows: per holonomic constraint, 3 relative-position rows J_b - J_a then 2
// relative angular rows along the axis-orthogonal frame; per clash
// constraint, the single row n_c' (J_j - J_i). Atom ids without a linkage
// atom (obstacles) contribute a zero Jacobian.
ConstraintJacobian assemble_jacobian(const KinematicLinkage& l, const FkResult& fk,
                                     const std::vector<HolonomicConstraint>& holonomic,
                                     const std::vector<ClashConstraint>& clashes = {});

// SVD-based nullspace. Singular values at or below 1e-10 * max(sigma_max, 1)
// count as vanishing; with no rows the basis is the identity.
NullspaceBasis nullspace(const Eigen::MatrixXd& jacobian, int dof_count);
inline NullspaceBasis nullspace(const ConstraintJacobian& j) {
  return nullspace(j.matrix, static_cast<int>(j.matrix.cols()));
}

inline Eigen::VectorXd project(const NullspaceBasis& n, const Eigen::VectorXd& delta_trial) {
  return n.basis * (n.basis.transpose() * delta_trial);
}

ConstraintFrames capture_frames(const KinematicLinkage& l, const FkResult& fk,
                                const std::vector<HolonomicConstraint>& holonomic);

// Phi(q) relative to the captured frames: 5 entries per constraint, position
// drift then the two frame-projected components of the relative rotation
// vector. Zero at the capture conformation; its exact linearization there is
// the assembled Jacobian.
Eigen::VectorXd constraint_violation(const KinematicLinkage& l, const FkResult& fk,
                                     const std::vector<HolonomicConstraint>& holonomic,
                                     const ConstraintFrames& frames);

}  // namespace kinex

#endif  // KINEX_CONSTRAINTS_HPP_
