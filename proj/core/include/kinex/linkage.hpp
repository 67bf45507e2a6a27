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

#ifndef KINEX_LINKAGE_HPP_
#define KINEX_LINKAGE_HPP_

#include <Eigen/Geometry>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kinex/atom.hpp"
#include "kinex/geometry.hpp"
#include "kinex/molecular_graph.hpp"
#include "kinex/rigid_body.hpp"

namespace kinex {

enum class DofKind { global_translation, global_rotation, revolute };

struct DofInfo {
  DofKind kind = DofKind::revolute;
  int chain = -1;
  // For revolute DOFs: the body whose joint this is, and the bond atoms
  // spanning the axis (anchor on the parent side, tip on the child side).
  int body = -1;
  int anchor_atom = -1;
  int axis_atom = -1;
  // For global DOFs: axis index 0..2 (x, y, z).
  int axis = -1;
};

// One conformation of a linkage. Revolute entries are angles in radians,
// global entries are Angstroms (translation) or radians (rotation).
struct Conformation {
  Eigen::VectorXd dofs;
  int id = -1;
  std::optional<int> parent_id;
  std::optional<std::vector<Vec3>> positions_cache;
};

// Everything forward kinematics produces for one conformation. Body
// transforms map reference coordinates to world coordinates; joint axes and
// anchors are the current world-frame rotation axes used by the Jacobians.
struct FkResult {
  std::vector<Vec3> positions;
  std::vector<Eigen::Isometry3d> body_tf;
  std::vector<Vec3> joint_axis_world;
  std::vector<Vec3> joint_anchor_world;
  // Per chain: world directions of the three global rotation axes (columns
  // x, y, z) and the current rotation center.
  std::vector<Mat3> chain_rot_axes;
  std::vector<Vec3> chain_center;
};

// Rooted kinematic tree over the rigid bodies of one or more chains. Each
// chain hangs off the super-root through six global DOFs; every tree edge
// contributes one revolute DOF. Immutable after construction, so instances
// can be shared freely across threads.
class KinematicLinkage {
 public:
  struct Chain {
    int root_body = -1;
    int global_dof_start = -1;
    Vec3 center_ref = Vec3::Zero();
    std::vector<int> bodies;
  };

  static KinematicLinkage build(std::vector<Atom> atoms, const MolecularGraph& graph,
                                const RigidBodyGraph& rb);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const MolecularGraph& graph() const { return graph_; }
  const std::vector<std::vector<int>>& bodies() const { return bodies_; }
  int body_of(int atom_id) const { return body_of_.at(atom_id); }
  int atom_index(int atom_id) const { return atom_index_.at(atom_id); }
  int body_count() const { return static_cast<int>(bodies_.size()); }
  int chain_count() const { return static_cast<int>(chains_.size()); }
  const std::vector<Chain>& chains() const { return chains_; }

  int dof_count() const { return static_cast<int>(dof_infos_.size()); }
  const std::vector<DofInfo>& dof_infos() const { return dof_infos_; }
  bool is_revolute(int dof) const { return dof_infos_[dof].kind == DofKind::revolute; }

  int parent_body(int body) const { return parent_body_[body]; }
  int joint_dof(int body) const { return joint_dof_[body]; }
  int chain_of_body(int body) const { return chain_of_body_[body]; }

  // Cycle-closing bonds left out of the spanning tree, as atom-id pairs.
  const std::vector<std::pair<int, int>>& leftover_edges() const { return leftover_edges_; }

  const std::vector<Vec3>& reference_positions() const { return ref_positions_; }

  Eigen::VectorXd zero_conformation() const {
    return Eigen::VectorXd::Zero(dof_count());
  }

  // Wraps revolute entries to (-pi, pi]; global entries pass through.
  Eigen::VectorXd wrap(const Eigen::VectorXd& q) const;

  FkResult forward_kinematics(const Eigen::VectorXd& q) const;

  // 3 x n matrix of instantaneous position sensitivities for one atom.
  Eigen::Matrix3Xd position_jacobian(const FkResult& fk, int atom_id) const;

  // 3 x n matrix of angular velocity sensitivities for one body.
  Eigen::Matrix3Xd angular_jacobian(const FkResult& fk, int body) const;

  // DOF indices that influence the given body, root to leaf. Used to fill
  // Jacobian columns without scanning all n DOFs.
  const std::vector<int>& dof_path(int body) const { return dof_paths_[body]; }

 private:
  std::vector<Atom> atoms_;
  MolecularGraph graph_;
  std::vector<std::vector<int>> bodies_;
  std::unordered_map<int, int> body_of_;
  std::unordered_map<int, int> atom_index_;
  std::vector<Vec3> ref_positions_;

  std::vector<Chain> chains_;
  std::vector<int> chain_of_body_;
  std::vector<int> parent_body_;
  std::vector<int> joint_dof_;
  std::vector<Vec3> joint_anchor_ref_;
  std::vector<Vec3> joint_axis_ref_;
  std::vector<int> traversal_;  // bodies in preorder, chain by chain
  std::vector<DofInfo> dof_infos_;
  std::vector<std::pair<int, int>> leftover_edges_;
  std::vector<std::vector<int>> dof_paths_;
};

// Convenience pipeline: molecular graph, contraction, and tree in one call.
KinematicLinkage build_linkage(std::vector<Atom> atoms,
                               const std::optional<std::vector<BondSpec>>& bonds = std::nullopt,
                               const std::vector<BondOrderOverride>& overrides = {});

}  // namespace kinex

#endif  // KINEX_LINKAGE_HPP_
