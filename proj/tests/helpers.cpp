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

#include "helpers.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "kinex/elements.hpp"

namespace kinex::test {

Atom make_atom(int id, const std::string& element, const Vec3& p) {
  Atom a;
  a.id = id;
  a.element = element;
  a.position = p;
  const auto r = RadiiTable::standard().lookup(element);
  a.vdw_radius = r->vdw;
  a.covalent_radius = r->covalent;
  return a;
}

std::vector<Atom> zigzag_carbons(int n) {
  const double b = 1.54;
  const double half = 34.0 * std::numbers::pi / 180.0;
  std::vector<Atom> atoms;
  for (int k = 0; k < n; ++k) {
    atoms.push_back(make_atom(
        k + 1, "C", Vec3(k * b * std::cos(half), 0.0, (k % 2) * b * std::sin(half))));
  }
  return atoms;
}

KinematicLinkage chain_linkage(int n) {
  std::vector<BondSpec> bonds;
  for (int k = 1; k < n; ++k) bonds.push_back({k, k + 1, BondOrder::single});
  return build_linkage(zigzag_carbons(n), bonds);
}

RandomMolecule random_tree_molecule(Rng& rng, int atom_count, double double_fraction) {
  RandomMolecule m;
  NormalSampler normal;
  m.atoms.push_back(make_atom(1, "C", Vec3::Zero()));
  for (int k = 2; k <= atom_count; ++k) {
    const int parent = static_cast<int>(uniform_index(rng, k - 1));
    Vec3 dir(normal(rng), normal(rng), normal(rng));
    while (dir.norm() < 1e-6) dir = Vec3(normal(rng), normal(rng), normal(rng));
    dir.normalize();
    m.atoms.push_back(make_atom(k, "C", m.atoms[parent].position + 1.5 * dir));
    const bool make_double = uniform01(rng) < double_fraction;
    m.bonds.push_back({parent + 1, k, make_double ? BondOrder::double_bond : BondOrder::single});
  }
  return m;
}

Eigen::VectorXd random_conformation(const KinematicLinkage& l, Rng& rng, double amplitude) {
  Eigen::VectorXd q(l.dof_count());
  for (int d = 0; d < l.dof_count(); ++d) q[d] = uniform_in(rng, -amplitude, amplitude);
  return q;
}

Eigen::Matrix3Xd fd_position_jacobian(const KinematicLinkage& l, const Eigen::VectorXd& q,
                                      int atom_id) {
  const double h = 1e-6;
  const int idx = l.atom_index(atom_id);
  Eigen::Matrix3Xd jac(3, l.dof_count());
  for (int d = 0; d < l.dof_count(); ++d) {
    Eigen::VectorXd qp = q, qm = q;
    qp[d] += h;
    qm[d] -= h;
    const Vec3 pp = l.forward_kinematics(qp).positions[idx];
    const Vec3 pm = l.forward_kinematics(qm).positions[idx];
    jac.col(d) = (pp - pm) / (2 * h);
  }
  return jac;
}

namespace {

using Mat4 = Eigen::Matrix4d;

Mat4 translate4(const Vec3& t) {
  Mat4 m = Mat4::Identity();
  m(0, 3) = t.x();
  m(1, 3) = t.y();
  m(2, 3) = t.z();
  return m;
}

// Rodrigues formula, written out entrywise.
Mat4 rotate4(const Vec3& axis, double angle) {
  const Vec3 u = axis.normalized();
  const double c = std::cos(angle), s = std::sin(angle), v = 1 - c;
  Mat4 m = Mat4::Identity();
  m(0, 0) = c + u.x() * u.x() * v;
  m(0, 1) = u.x() * u.y() * v - u.z() * s;
  m(0, 2) = u.x() * u.z() * v + u.y() * s;
  m(1, 0) = u.y() * u.x() * v + u.z() * s;
  m(1, 1) = c + u.y() * u.y() * v;
  m(1, 2) = u.y() * u.z() * v - u.x() * s;
  m(2, 0) = u.z() * u.x() * v - u.y() * s;
  m(2, 1) = u.z() * u.y() * v + u.x() * s;
  m(2, 2) = c + u.z() * u.z() * v;
  return m;
}

Mat4 rotate_about4(const Vec3& anchor, const Vec3& axis, double angle) {
  return translate4(anchor) * rotate4(axis, angle) * translate4(-anchor);
}

}  // namespace

std::vector<Vec3> matrix_stack_fk(const KinematicLinkage& l, const Eigen::VectorXd& q) {
  std::vector<Mat4> body_tf(l.body_count());
  std::vector<bool> done(l.body_count(), false);

  const auto& ref = l.reference_positions();
  std::function<const Mat4&(int)> tf = [&](int body) -> const Mat4& {
    if (done[body]) return body_tf[body];
    const int parent = l.parent_body(body);
    if (parent < 0) {
      const auto& chain = l.chains()[l.chain_of_body(body)];
      const int g = chain.global_dof_start;
      const Vec3 t(q[g], q[g + 1], q[g + 2]);
      const Mat4 rot = rotate4(Vec3::UnitZ(), q[g + 5]) * rotate4(Vec3::UnitY(), q[g + 4]) *
                       rotate4(Vec3::UnitX(), q[g + 3]);
      body_tf[body] = translate4(chain.center_ref + t) * rot * translate4(-chain.center_ref);
    } else {
      const int dof = l.joint_dof(body);
      const DofInfo& info = l.dof_infos()[dof];
      const Vec3 anchor = ref[l.atom_index(info.anchor_atom)];
      const Vec3 axis = ref[l.atom_index(info.axis_atom)] - anchor;
      body_tf[body] = tf(parent) * rotate_about4(anchor, axis, q[dof]);
    }
    done[body] = true;
    return body_tf[body];
  };

  std::vector<Vec3> out(l.atoms().size());
  for (int b = 0; b < l.body_count(); ++b) {
    const Mat4& m = tf(b);
    for (int atom_id : l.bodies()[b]) {
      const int idx = l.atom_index(atom_id);
      const Eigen::Vector4d h = m * ref[idx].homogeneous();
      out[idx] = h.head<3>();
    }
  }
  return out;
}

ClashReport brute_force_clashes(const std::vector<CollisionSphere>& spheres, double scale,
                                const std::function<bool(int, int)>& exclude) {
  ClashReport report;
  for (std::size_t i = 0; i < spheres.size(); ++i) {
    for (std::size_t j = i + 1; j < spheres.size(); ++j) {
      if (exclude && exclude(static_cast<int>(i), static_cast<int>(j))) continue;
      const double threshold = scale * (spheres[i].radius + spheres[j].radius);
      const double dist = (spheres[i].position - spheres[j].position).norm();
      if (dist < threshold) {
        ClashPair p;
        p.atom_i = std::min(spheres[i].id, spheres[j].id);
        p.atom_j = std::max(spheres[i].id, spheres[j].id);
        p.overlap = threshold - dist;
        report.pairs.push_back(p);
      }
    }
  }
  std::sort(report.pairs.begin(), report.pairs.end(), [](const ClashPair& a, const ClashPair& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    return std::make_pair(a.atom_i, a.atom_j) < std::make_pair(b.atom_i, b.atom_j);
  });
  report.clash_free = report.pairs.empty();
  return report;
}

int gram_schmidt_rank(const Eigen::MatrixXd& m, double rel_tol) {
  std::vector<Eigen::VectorXd> basis;
  double max_norm = 0;
  for (int r = 0; r < m.rows(); ++r) max_norm = std::max(max_norm, m.row(r).norm());
  if (max_norm == 0) return 0;
  for (int r = 0; r < m.rows(); ++r) {
    Eigen::VectorXd v = m.row(r).transpose();
    for (const auto& b : basis) v -= b.dot(v) * b;
    for (const auto& b : basis) v -= b.dot(v) * b;  // second pass for stability
    if (v.norm() > rel_tol * max_norm) basis.push_back(v.normalized());
  }
  return static_cast<int>(basis.size());
}

double qcp_rmsd(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  const std::size_t n = a.size();
  Vec3 ca = Vec3::Zero(), cb = Vec3::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    ca += a[i];
    cb += b[i];
  }
  ca /= static_cast<double>(n);
  cb /= static_cast<double>(n);

  double ga = 0, gb = 0;
  Mat3 s = Mat3::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 x = a[i] - ca, y = b[i] - cb;
    ga += x.squaredNorm();
    gb += y.squaredNorm();
    s += y * x.transpose();
  }

  Eigen::Matrix4d k;
  const double sxx = s(0, 0), sxy = s(0, 1), sxz = s(0, 2);
  const double syx = s(1, 0), syy = s(1, 1), syz = s(1, 2);
  const double szx = s(2, 0), szy = s(2, 1), szz = s(2, 2);
  k << sxx + syy + szz, syz - szy, szx - sxz, sxy - syx,
       syz - szy, sxx - syy - szz, sxy + syx, szx + sxz,
       szx - sxz, sxy + syx, -sxx + syy - szz, syz + szy,
       sxy - syx, szx + sxz, syz + szy, -sxx - syy + szz;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(k);
  const double lambda_max = es.eigenvalues().maxCoeff();
  const double msd = std::max(0.0, (ga + gb - 2 * lambda_max) / static_cast<double>(n));
  return std::sqrt(msd);
}

std::vector<std::array<int, 5>> five_cycles_oracle(const MolecularGraph& g) {
  std::set<std::array<int, 5>> found;
  for (int a : g.atom_ids()) {
    for (int b : g.neighbors(a)) {
      for (int c : g.neighbors(b)) {
        if (c == a) continue;
        for (int d : g.neighbors(c)) {
          if (d == a || d == b) continue;
          for (int e : g.neighbors(d)) {
            if (e == a || e == b || e == c) continue;
            if (!g.has_bond(e, a)) continue;
            std::array<int, 5> ring{a, b, c, d, e};
            std::sort(ring.begin(), ring.end());
            found.insert(ring);
          }
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace kinex::test
