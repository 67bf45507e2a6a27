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

#include "kinex/linkage.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

#include "kinex/error.hpp"

namespace kinex {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

Eigen::Isometry3d rotation_about(const Vec3& anchor, const Vec3& axis, double angle) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.translate(anchor);
  t.rotate(Eigen::AngleAxisd(angle, axis));
  t.translate(-anchor);
  return t;
}

}  // namespace

KinematicLinkage KinematicLinkage::build(std::vector<Atom> atoms, const MolecularGraph& graph,
                                         const RigidBodyGraph& rb) {
  if (rb.bodies.empty()) throw ModelError("cannot build a kinematic tree from an empty graph");

  KinematicLinkage l;
  l.atoms_ = std::move(atoms);
  l.graph_ = graph;
  l.bodies_ = rb.bodies;
  l.body_of_ = rb.body_of;
  l.ref_positions_.reserve(l.atoms_.size());
  for (std::size_t i = 0; i < l.atoms_.size(); ++i) {
    l.atom_index_[l.atoms_[i].id] = static_cast<int>(i);
    l.ref_positions_.push_back(l.atoms_[i].position);
  }

  const int nb = static_cast<int>(rb.bodies.size());

  // Minimum spanning forest over the rotatable edges. Weight is the sum of
  // the bond's atom ids with lexicographic tie-breaking, which fixes the
  // topology independently of input bond order.
  std::vector<int> order(rb.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ea = rb.edges[a];
    const auto& eb = rb.edges[b];
    return std::make_tuple(static_cast<long long>(ea.atom_i) + ea.atom_j, ea.atom_i, ea.atom_j) <
           std::make_tuple(static_cast<long long>(eb.atom_i) + eb.atom_j, eb.atom_i, eb.atom_j);
  });
  UnionFind uf(nb);
  std::vector<std::vector<int>> tree_adj(nb);
  std::vector<int> tree_edges;
  for (int idx : order) {
    const auto& e = rb.edges[idx];
    if (uf.unite(e.body_i, e.body_j)) {
      tree_adj[e.body_i].push_back(idx);
      tree_adj[e.body_j].push_back(idx);
      tree_edges.push_back(idx);
    } else {
      l.leftover_edges_.emplace_back(e.atom_i, e.atom_j);
    }
  }
  std::sort(l.leftover_edges_.begin(), l.leftover_edges_.end());
  for (auto& adj : tree_adj) {
    std::sort(adj.begin(), adj.end(), [&](int a, int b) {
      return std::make_pair(rb.edges[a].atom_i, rb.edges[a].atom_j) <
             std::make_pair(rb.edges[b].atom_i, rb.edges[b].atom_j);
    });
  }

  // Chains are the connected components of the rigid-body graph. Bodies are
  // already ordered by smallest atom id, so the first body of a component is
  // its root and component order follows root order.
  std::vector<int> chain_of(nb, -1);
  for (int b = 0; b < nb; ++b) {
    const int root = uf.find(b);
    if (chain_of[root] == -1) {
      chain_of[root] = static_cast<int>(l.chains_.size());
      l.chains_.emplace_back();
    }
    chain_of[b] = chain_of[root];
    l.chains_[chain_of[b]].bodies.push_back(b);
  }
  l.chain_of_body_ = chain_of;

  l.parent_body_.assign(nb, -1);
  l.joint_dof_.assign(nb, -1);
  l.joint_anchor_ref_.assign(nb, Vec3::Zero());
  l.joint_axis_ref_.assign(nb, Vec3::Zero());

  for (std::size_t c = 0; c < l.chains_.size(); ++c) {
    Chain& chain = l.chains_[c];
    chain.root_body = chain.bodies.front();
    chain.global_dof_start = static_cast<int>(l.dof_infos_.size());
    const int root_atom = l.bodies_[chain.root_body].front();
    chain.center_ref = l.ref_positions_[l.atom_index_.at(root_atom)];

    for (int axis = 0; axis < 3; ++axis) {
      DofInfo d;
      d.kind = DofKind::global_translation;
      d.chain = static_cast<int>(c);
      d.axis = axis;
      l.dof_infos_.push_back(d);
    }
    for (int axis = 0; axis < 3; ++axis) {
      DofInfo d;
      d.kind = DofKind::global_rotation;
      d.chain = static_cast<int>(c);
      d.axis = axis;
      l.dof_infos_.push_back(d);
    }

    // Preorder walk assigning one revolute DOF per tree edge.
    std::vector<std::pair<int, int>> stack;  // (body, incoming edge index)
    stack.emplace_back(chain.root_body, -1);
    while (!stack.empty()) {
      auto [body, in_edge] = stack.back();
      stack.pop_back();
      l.traversal_.push_back(body);
      // Push children in reverse so the stack pops them in sorted order.
      const auto& adj = tree_adj[body];
      for (auto it = adj.rbegin(); it != adj.rend(); ++it) {
        if (*it == in_edge) continue;
        const auto& e = rb.edges[*it];
        const int child = (e.body_i == body) ? e.body_j : e.body_i;
        if (l.parent_body_[child] != -1 || child == chain.root_body) continue;
        l.parent_body_[child] = body;
        stack.emplace_back(child, *it);
      }
      if (in_edge >= 0) {
        const auto& e = rb.edges[in_edge];
        const int parent = l.parent_body_[body];
        const int anchor_atom = (l.body_of_.at(e.atom_i) == parent) ? e.atom_i : e.atom_j;
        const int axis_atom = (anchor_atom == e.atom_i) ? e.atom_j : e.atom_i;
        const Vec3 anchor = l.ref_positions_[l.atom_index_.at(anchor_atom)];
        const Vec3 tip = l.ref_positions_[l.atom_index_.at(axis_atom)];
        const Vec3 axis = tip - anchor;
        if (axis.norm() < 1e-12) {
          throw ModelError("zero-length rotation axis between atoms " +
                           std::to_string(anchor_atom) + " and " + std::to_string(axis_atom));
        }
        l.joint_anchor_ref_[body] = anchor;
        l.joint_axis_ref_[body] = axis.normalized();
        l.joint_dof_[body] = static_cast<int>(l.dof_infos_.size());

        DofInfo d;
        d.kind = DofKind::revolute;
        d.chain = static_cast<int>(c);
        d.body = body;
        d.anchor_atom = anchor_atom;
        d.axis_atom = axis_atom;
        l.dof_infos_.push_back(d);
      }
    }
  }

  // The preorder walk above visits a child only after its parent, but DOF
  // indices are assigned at pop time, so a parent's joint index is always
  // known before any descendant's. Build the root paths in that order.
  l.dof_paths_.assign(nb, {});
  for (int body : l.traversal_) {
    std::vector<int>& path = l.dof_paths_[body];
    const int parent = l.parent_body_[body];
    if (parent < 0) {
      const int g = l.chains_[l.chain_of_body_[body]].global_dof_start;
      for (int k = 0; k < 6; ++k) path.push_back(g + k);
    } else {
      path = l.dof_paths_[parent];
      path.push_back(l.joint_dof_[body]);
    }
  }

  return l;
}

Eigen::VectorXd KinematicLinkage::wrap(const Eigen::VectorXd& q) const {
  Eigen::VectorXd out = q;
  for (int k = 0; k < dof_count(); ++k) {
    if (dof_infos_[k].kind == DofKind::revolute) out[k] = wrap_angle(out[k]);
  }
  return out;
}

FkResult KinematicLinkage::forward_kinematics(const Eigen::VectorXd& q) const {
  if (q.size() != dof_count()) {
    throw ModelError("conformation has " + std::to_string(q.size()) + " DOFs, linkage expects " +
                     std::to_string(dof_count()));
  }
  FkResult fk;
  const int nb = body_count();
  fk.positions.resize(atoms_.size());
  fk.body_tf.assign(nb, Eigen::Isometry3d::Identity());
  fk.joint_axis_world.assign(nb, Vec3::Zero());
  fk.joint_anchor_world.assign(nb, Vec3::Zero());
  fk.chain_rot_axes.resize(chains_.size());
  fk.chain_center.resize(chains_.size());

  std::vector<Eigen::Isometry3d> chain_tf(chains_.size());
  for (std::size_t c = 0; c < chains_.size(); ++c) {
    const int g = chains_[c].global_dof_start;
    const Vec3 t(q[g], q[g + 1], q[g + 2]);
    const Mat3 rx = Eigen::AngleAxisd(q[g + 3], Vec3::UnitX()).toRotationMatrix();
    const Mat3 ry = Eigen::AngleAxisd(q[g + 4], Vec3::UnitY()).toRotationMatrix();
    const Mat3 rz = Eigen::AngleAxisd(q[g + 5], Vec3::UnitZ()).toRotationMatrix();
    const Mat3 r = rz * ry * rx;
    const Vec3& center = chains_[c].center_ref;

    Eigen::Isometry3d tf = Eigen::Isometry3d::Identity();
    tf.translate(center + t);
    tf.rotate(r);
    tf.translate(-center);
    chain_tf[c] = tf;

    // World directions the global rotation columns rotate about. Rotations
    // compose as Rz Ry Rx, so the x axis is pre-rotated by the outer two.
    fk.chain_rot_axes[c].col(0) = rz * (ry * Vec3::UnitX());
    fk.chain_rot_axes[c].col(1) = rz * Vec3::UnitY();
    fk.chain_rot_axes[c].col(2) = Vec3::UnitZ();
    fk.chain_center[c] = center + t;
  }

  for (int body : traversal_) {
    const int parent = parent_body_[body];
    if (parent < 0) {
      fk.body_tf[body] = chain_tf[chain_of_body_[body]];
    } else {
      const Eigen::Isometry3d& pt = fk.body_tf[parent];
      fk.joint_axis_world[body] = pt.linear() * joint_axis_ref_[body];
      fk.joint_anchor_world[body] = pt * joint_anchor_ref_[body];
      fk.body_tf[body] =
          pt * rotation_about(joint_anchor_ref_[body], joint_axis_ref_[body], q[joint_dof_[body]]);
    }
  }

  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    fk.positions[i] = fk.body_tf[body_of_.at(atoms_[i].id)] * ref_positions_[i];
  }
  return fk;
}

Eigen::Matrix3Xd KinematicLinkage::position_jacobian(const FkResult& fk, int atom_id) const {
  Eigen::Matrix3Xd jac = Eigen::Matrix3Xd::Zero(3, dof_count());
  const int body = body_of_.at(atom_id);
  const Vec3& p = fk.positions[atom_index_.at(atom_id)];
  const int c = chain_of_body_[body];
  const int g = chains_[c].global_dof_start;

  jac.col(g + 0) = Vec3::UnitX();
  jac.col(g + 1) = Vec3::UnitY();
  jac.col(g + 2) = Vec3::UnitZ();
  const Vec3 rel = p - fk.chain_center[c];
  for (int k = 0; k < 3; ++k) {
    jac.col(g + 3 + k) = fk.chain_rot_axes[c].col(k).cross(rel);
  }
  for (int b = body; parent_body_[b] >= 0; b = parent_body_[b]) {
    jac.col(joint_dof_[b]) = fk.joint_axis_world[b].cross(p - fk.joint_anchor_world[b]);
  }
  return jac;
}

Eigen::Matrix3Xd KinematicLinkage::angular_jacobian(const FkResult& fk, int body) const {
  Eigen::Matrix3Xd jac = Eigen::Matrix3Xd::Zero(3, dof_count());
  const int c = chain_of_body_[body];
  const int g = chains_[c].global_dof_start;
  for (int k = 0; k < 3; ++k) {
    jac.col(g + 3 + k) = fk.chain_rot_axes[c].col(k);
  }
  for (int b = body; parent_body_[b] >= 0; b = parent_body_[b]) {
    jac.col(joint_dof_[b]) = fk.joint_axis_world[b];
  }
  return jac;
}

KinematicLinkage build_linkage(std::vector<Atom> atoms,
                               const std::optional<std::vector<BondSpec>>& bonds,
                               const std::vector<BondOrderOverride>& overrides) {
  MolecularGraph graph = build_molecular_graph(atoms, bonds, overrides);
  RigidBodyGraph rb = contract_to_rigid_bodies(graph);
  return KinematicLinkage::build(std::move(atoms), graph, rb);
}

}  // namespace kinex
