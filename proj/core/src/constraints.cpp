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

#include "kinex/constraints.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "kinex/error.hpp"
#include "kinex/log.hpp"

namespace kinex {
namespace {

bool is_polar(const std::string& element) { return element == "N" || element == "O"; }

const Vec3& pos_of(const KinematicLinkage& l, const FkResult& fk, int atom_id) {
  return fk.positions[l.atom_index(atom_id)];
}

double angle_at(const Vec3& left, const Vec3& apex, const Vec3& right) {
  const Vec3 u = left - apex;
  const Vec3 v = right - apex;
  const double nn = u.norm() * v.norm();
  if (nn < 1e-12) return 0;
  return std::acos(std::clamp(u.dot(v) / nn, -1.0, 1.0));
}

// Reference bond length and flanking angles, for reporting only.
void fill_reference_geometry(const KinematicLinkage& l, const FkResult& fk,
                             HolonomicConstraint& c) {
  const Vec3& pa = pos_of(l, fk, c.atom_a);
  const Vec3& pb = pos_of(l, fk, c.atom_b);
  c.bond_length = (pb - pa).norm();
  for (int n : l.graph().neighbors(c.atom_a)) {
    if (n == c.atom_b) continue;
    c.angle_a = angle_at(pos_of(l, fk, n), pa, pb);
    break;
  }
  for (int n : l.graph().neighbors(c.atom_b)) {
    if (n == c.atom_a) continue;
    c.angle_b = angle_at(pos_of(l, fk, n), pb, pa);
    break;
  }
}

}  // namespace

std::vector<HolonomicConstraint> detect_hydrogen_bonds(
    const KinematicLinkage& l, const FkResult& fk, const HydrogenBondCriteria& criteria,
    const std::vector<std::pair<int, int>>& explicit_pairs) {
  std::vector<HolonomicConstraint> out;
  std::set<std::pair<int, int>> seen;  // unordered pair, smaller id first
  auto mark = [&seen](int a, int b) {
    return seen.insert({std::min(a, b), std::max(a, b)}).second;
  };

  const auto& atoms = l.atoms();
  for (const Atom& donor : atoms) {
    if (!is_polar(donor.element)) continue;
    for (int h_id : l.graph().neighbors(donor.id)) {
      const Atom& h = atoms[l.atom_index(h_id)];
      if (h.element != "H") continue;
      for (const Atom& acceptor : atoms) {
        if (!is_polar(acceptor.element)) continue;
        if (acceptor.id == donor.id) continue;
        if (l.graph().has_bond(h_id, acceptor.id)) continue;
        if (l.body_of(h_id) == l.body_of(acceptor.id)) continue;
        const Vec3& ph = pos_of(l, fk, h_id);
        const Vec3& pa = pos_of(l, fk, acceptor.id);
        if ((pa - ph).norm() > criteria.max_ha_distance) continue;
        const double ang = angle_at(pos_of(l, fk, donor.id), ph, pa);
        if (ang * 180.0 / std::acos(-1.0) < criteria.min_dha_angle_deg) continue;
        if (!mark(h_id, acceptor.id)) continue;
        HolonomicConstraint c;
        c.kind = ConstraintKind::hydrogen_bond;
        c.atom_a = h_id;
        c.atom_b = acceptor.id;
        fill_reference_geometry(l, fk, c);
        out.push_back(c);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const HolonomicConstraint& a, const HolonomicConstraint& b) {
    return std::make_pair(a.atom_a, a.atom_b) < std::make_pair(b.atom_a, b.atom_b);
  });

  for (const auto& [raw_a, raw_b] : explicit_pairs) {
    if (!l.graph().has_atom(raw_a) || !l.graph().has_atom(raw_b)) {
      throw ModelError("explicit constraint references unknown atom " +
                       std::to_string(l.graph().has_atom(raw_a) ? raw_b : raw_a));
    }
    int a = raw_a;
    int b = raw_b;
    const bool a_is_h = atoms[l.atom_index(a)].element == "H";
    const bool b_is_h = atoms[l.atom_index(b)].element == "H";
    if (!a_is_h && !b_is_h) {
      // Two heavy atoms: treat the first as the donor and substitute its
      // hydrogen closest to the acceptor.
      int best_h = -1;
      double best_d = 0;
      for (int n : l.graph().neighbors(a)) {
        if (atoms[l.atom_index(n)].element != "H") continue;
        const double d = (pos_of(l, fk, n) - pos_of(l, fk, b)).norm();
        if (best_h == -1 || d < best_d) {
          best_h = n;
          best_d = d;
        }
      }
      if (best_h == -1) {
        log_warning("declared donor atom " + std::to_string(a) +
                    " has no bonded hydrogen; constraint skipped");
        continue;
      }
      a = best_h;
    } else if (a_is_h != b_is_h && b_is_h) {
      std::swap(a, b);
    }
    if (l.body_of(a) == l.body_of(b)) {
      throw ModelError("explicit constraint atoms " + std::to_string(a) + " and " +
                       std::to_string(b) + " lie in the same rigid body");
    }
    if (!mark(a, b)) {
      log_warning("duplicate constraint on atoms " + std::to_string(a) + " and " +
                  std::to_string(b) + " ignored");
      continue;
    }
    HolonomicConstraint c;
    c.kind = ConstraintKind::hydrogen_bond;
    c.atom_a = a;
    c.atom_b = b;
    fill_reference_geometry(l, fk, c);
    out.push_back(c);
  }
  return out;
}

std::vector<HolonomicConstraint> closure_constraints(const KinematicLinkage& l,
                                                     const FkResult& fk) {
  std::vector<HolonomicConstraint> out;
  for (const auto& [a, b] : l.leftover_edges()) {
    HolonomicConstraint c;
    c.kind = ConstraintKind::covalent_closure;
    c.atom_a = a;
    c.atom_b = b;
    fill_reference_geometry(l, fk, c);
    out.push_back(c);
  }
  return out;
}

std::vector<HolonomicConstraint> gather_constraints(
    const KinematicLinkage& l, const FkResult& fk, const HydrogenBondCriteria& criteria,
    const std::vector<std::pair<int, int>>& explicit_pairs) {
  auto out = detect_hydrogen_bonds(l, fk, criteria, explicit_pairs);
  auto closures = closure_constraints(l, fk);
  out.insert(out.end(), closures.begin(), closures.end());
  return out;
}

ConstraintJacobian assemble_jacobian(const KinematicLinkage& l, const FkResult& fk,
                                     const std::vector<HolonomicConstraint>& holonomic,
                                     const std::vector<ClashConstraint>& clashes) {
  const int n = l.dof_count();
  const int m = static_cast<int>(holonomic.size());
  const int c = static_cast<int>(clashes.size());
  ConstraintJacobian out;
  out.holonomic_count = m;
  out.clash_count = c;
  out.matrix.setZero(5 * m + c, n);
  out.row_map.resize(5 * m + c);

  for (int i = 0; i < m; ++i) {
    const auto& hc = holonomic[i];
    const Vec3& pa = pos_of(l, fk, hc.atom_a);
    const Vec3& pb = pos_of(l, fk, hc.atom_b);
    const Vec3 axis = pb - pa;
    if (axis.norm() < 1e-12) {
      throw NumericalError("degenerate constraint: atoms " + std::to_string(hc.atom_a) + " and " +
                           std::to_string(hc.atom_b) + " coincide");
    }
    const Eigen::Matrix3Xd ja = l.position_jacobian(fk, hc.atom_a);
    const Eigen::Matrix3Xd jb = l.position_jacobian(fk, hc.atom_b);
    out.matrix.block(5 * i, 0, 3, n) = jb - ja;

    const auto [u1, u2] = orthonormal_complement(axis.normalized());
    const Eigen::Matrix3Xd wa = l.angular_jacobian(fk, l.body_of(hc.atom_a));
    const Eigen::Matrix3Xd wb = l.angular_jacobian(fk, l.body_of(hc.atom_b));
    const Eigen::Matrix3Xd wrel = wb - wa;
    out.matrix.row(5 * i + 3) = u1.transpose() * wrel;
    out.matrix.row(5 * i + 4) = u2.transpose() * wrel;
    for (int r = 0; r < 5; ++r) out.row_map[5 * i + r] = i;
  }

  for (int k = 0; k < c; ++k) {
    const auto& cc = clashes[k];
    Eigen::Matrix3Xd rel = Eigen::Matrix3Xd::Zero(3, n);
    if (l.graph().has_atom(cc.atom_j)) rel += l.position_jacobian(fk, cc.atom_j);
    if (l.graph().has_atom(cc.atom_i)) rel -= l.position_jacobian(fk, cc.atom_i);
    out.matrix.row(5 * m + k) = cc.normal.transpose() * rel;
    out.row_map[5 * m + k] = m + k;
  }
  return out;
}

NullspaceBasis nullspace(const Eigen::MatrixXd& jacobian, int dof_count) {
  NullspaceBasis out;
  if (jacobian.rows() == 0) {
    out.basis = Eigen::MatrixXd::Identity(dof_count, dof_count);
    return out;
  }
  if (!jacobian.allFinite()) throw NumericalError("constraint Jacobian contains non-finite values");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  out.singular_value_cutoff = 1e-10 * std::max(sigma_max, 1.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > out.singular_value_cutoff) ++rank;
  }
  out.rank = rank;
  out.basis = svd.matrixV().rightCols(dof_count - rank);
  return out;
}

ConstraintFrames capture_frames(const KinematicLinkage& l, const FkResult& fk,
                                const std::vector<HolonomicConstraint>& holonomic) {
  ConstraintFrames frames;
  for (const auto& hc : holonomic) {
    const Vec3& pa = pos_of(l, fk, hc.atom_a);
    const Vec3& pb = pos_of(l, fk, hc.atom_b);
    const Vec3 axis = pb - pa;
    if (axis.norm() < 1e-12) {
      throw NumericalError("degenerate constraint: atoms " + std::to_string(hc.atom_a) + " and " +
                           std::to_string(hc.atom_b) + " coincide");
    }
    frames.rel_ref.push_back(axis);
    frames.rot_a_ref.push_back(fk.body_tf[l.body_of(hc.atom_a)].linear());
    frames.rot_b_ref.push_back(fk.body_tf[l.body_of(hc.atom_b)].linear());
    const auto [u1, u2] = orthonormal_complement(axis.normalized());
    frames.u1.push_back(u1);
    frames.u2.push_back(u2);
  }
  return frames;
}

Eigen::VectorXd constraint_violation(const KinematicLinkage& l, const FkResult& fk,
                                     const std::vector<HolonomicConstraint>& holonomic,
                                     const ConstraintFrames& frames) {
  const int m = static_cast<int>(holonomic.size());
  Eigen::VectorXd phi(5 * m);
  for (int i = 0; i < m; ++i) {
    const auto& hc = holonomic[i];
    const Vec3 rel = pos_of(l, fk, hc.atom_b) - pos_of(l, fk, hc.atom_a);
    phi.segment<3>(5 * i) = rel - frames.rel_ref[i];

    const Mat3 drift_a = fk.body_tf[l.body_of(hc.atom_a)].linear() * frames.rot_a_ref[i].transpose();
    const Mat3 drift_b = fk.body_tf[l.body_of(hc.atom_b)].linear() * frames.rot_b_ref[i].transpose();
    const Vec3 theta = rotation_vector(drift_b * drift_a.transpose());
    phi[5 * i + 3] = frames.u1[i].dot(theta);
    phi[5 * i + 4] = frames.u2[i].dot(theta);
  }
  return phi;
}

}  // namespace kinex
