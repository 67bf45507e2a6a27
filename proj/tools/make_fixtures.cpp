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

// Generates the bundled fixtures under a data directory:
//   dense_chain.lnk      50-DOF chain threaded through an obstacle field
//   elongated_chain.lnk  long free chain for neighbor-search comparisons
//   ladder.lnk           two strands tied by seven N-H...O hydrogen bonds
//   helix.pdb            polyglycine alpha helix with amide hydrogens
// Every fixture is rebuilt through the library and checked (clash-free
// start, expected DOF and constraint counts) before it is written.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "kinex/collision.hpp"
#include "kinex/constraints.hpp"
#include "kinex/elements.hpp"
#include "kinex/error.hpp"
#include "kinex/linkage.hpp"
#include "kinex/linkage_file.hpp"
#include "kinex/pdb.hpp"

namespace {

using kinex::Atom;
using kinex::Bond;
using kinex::BondOrder;
using kinex::BondSpec;
using kinex::Obstacle;
using kinex::Vec3;

constexpr double kPi = std::numbers::pi;

Atom make_atom(int id, const std::string& element, const Vec3& p, const kinex::RadiiTable& radii) {
  Atom a;
  a.id = id;
  a.element = element;
  a.position = p;
  const auto r = radii.lookup(element);
  if (!r) throw kinex::ModelError("no radii for element " + element);
  a.vdw_radius = r->vdw;
  a.covalent_radius = r->covalent;
  return a;
}

// Zigzag carbon backbone in the xz plane: bond length 1.54 A, bond angle
// 112 degrees, substituent direction +y free.
std::vector<Vec3> zigzag(int n) {
  const double b = 1.54;
  const double half = 34.0 * kPi / 180.0;  // (180 - 112) / 2
  const double dx = b * std::cos(half);
  const double dz = b * std::sin(half);
  std::vector<Vec3> p;
  p.reserve(n);
  for (int k = 0; k < n; ++k) p.emplace_back(k * dx, 0.0, (k % 2) * dz);
  return p;
}

struct Built {
  std::vector<Atom> atoms;
  std::vector<BondSpec> bonds;
  std::vector<Obstacle> obstacles;
};

std::vector<Bond> as_bonds(const std::vector<BondSpec>& specs) {
  std::vector<Bond> bonds;
  bonds.reserve(specs.size());
  for (const auto& s : specs) {
    Bond b;
    b.atom_i = std::min(s.atom_i, s.atom_j);
    b.atom_j = std::max(s.atom_i, s.atom_j);
    b.order = s.order;
    bonds.push_back(b);
  }
  return bonds;
}

// Rebuilds the model from scratch and enforces the properties the tests
// rely on. Returns the detected hydrogen bond count.
int check_fixture(const std::string& label, const Built& f, int want_dofs, int min_hbonds) {
  const kinex::KinematicLinkage linkage = kinex::build_linkage(f.atoms, f.bonds);
  if (linkage.dof_count() != want_dofs) {
    throw kinex::ModelError(label + ": expected " + std::to_string(want_dofs) + " DOFs, built " +
                            std::to_string(linkage.dof_count()));
  }
  const kinex::CollisionModel collision(linkage, f.obstacles);
  const kinex::FkResult fk = linkage.forward_kinematics(linkage.zero_conformation());
  const kinex::ClashReport report = collision.find_clashes(fk.positions);
  if (!report.clash_free) {
    std::string msg = label + ": initial conformation clashes:";
    for (std::size_t i = 0; i < report.pairs.size() && i < 5; ++i) {
      msg += " (" + std::to_string(report.pairs[i].atom_i) + "," +
             std::to_string(report.pairs[i].atom_j) + ") overlap " +
             std::to_string(report.pairs[i].overlap);
    }
    throw kinex::ModelError(msg);
  }
  const auto hbonds = kinex::detect_hydrogen_bonds(linkage, fk);
  if (static_cast<int>(hbonds.size()) < min_hbonds) {
    throw kinex::ModelError(label + ": detected " + std::to_string(hbonds.size()) +
                            " hydrogen bonds, need " + std::to_string(min_hbonds));
  }
  return static_cast<int>(hbonds.size());
}

// 45 carbons (6 + 44 = 50 DOFs) with 40 obstacle spheres placed so that the
// clash threshold sits at 80% of the gap to the nearest atom.
Built dense_chain(const kinex::RadiiTable& radii) {
  Built f;
  const int n = 45;
  const auto pos = zigzag(n);
  for (int k = 0; k < n; ++k) f.atoms.push_back(make_atom(k + 1, "C", pos[k], radii));
  for (int k = 0; k + 1 < n; ++k) f.bonds.push_back({k + 1, k + 2, BondOrder::single});

  const double r_obs = 1.2;
  const double threshold = 0.75 * (1.70 + r_obs);
  const double gap = threshold / 0.8;
  for (int k = 3; k <= 42; ++k) {
    const double side = (k % 2 == 0) ? 1.0 : -1.0;
    Obstacle o;
    o.position = pos[k - 1] + Vec3(0, side * gap, 0);
    o.radius = r_obs;
    f.obstacles.push_back(o);
  }
  return f;
}

Built elongated_chain(const kinex::RadiiTable& radii) {
  Built f;
  const int n = 120;
  const auto pos = zigzag(n);
  for (int k = 0; k < n; ++k) f.atoms.push_back(make_atom(k + 1, "C", pos[k], radii));
  for (int k = 0; k + 1 < n; ++k) f.bonds.push_back({k + 1, k + 2, BondOrder::single});
  return f;
}

// Two disconnected strands. Strand A carries N-H donors, strand B carries
// carbonyl acceptors directly above them; the H...O gap of 2.15 A is inside
// the 2.5 A detection cutoff but outside the 2.04 A clash threshold.
Built ladder(const kinex::RadiiTable& radii) {
  Built f;
  const int n = 21;
  const auto pos = zigzag(n);
  const double y_b = 5.84;  // 2.46 (H level) + 2.15 (gap) + 1.23 (C=O)

  int id = 0;
  std::vector<int> a_backbone, b_backbone;
  for (int k = 0; k < n; ++k) {
    f.atoms.push_back(make_atom(++id, "C", pos[k], radii));
    a_backbone.push_back(id);
  }
  for (int k = 0; k + 1 < n; ++k)
    f.bonds.push_back({a_backbone[k], a_backbone[k + 1], BondOrder::single});
  for (int k = 1; k < n; k += 3) {
    const Vec3 base = pos[k];
    f.atoms.push_back(make_atom(++id, "N", base + Vec3(0, 1.45, 0), radii));
    const int nid = id;
    f.atoms.push_back(make_atom(++id, "H", base + Vec3(0, 2.46, 0), radii));
    f.bonds.push_back({a_backbone[k], nid, BondOrder::single});
    f.bonds.push_back({nid, id, BondOrder::single});
  }
  for (int k = 0; k < n; ++k) {
    f.atoms.push_back(make_atom(++id, "C", pos[k] + Vec3(0, y_b, 0), radii));
    b_backbone.push_back(id);
  }
  for (int k = 0; k + 1 < n; ++k)
    f.bonds.push_back({b_backbone[k], b_backbone[k + 1], BondOrder::single});
  for (int k = 1; k < n; k += 3) {
    f.atoms.push_back(make_atom(++id, "O", pos[k] + Vec3(0, y_b - 1.23, 0), radii));
    f.bonds.push_back({b_backbone[k], id, BondOrder::double_bond});
  }
  return f;
}

double dihedral(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Vec3 b1 = b - a, b2 = c - b, b3 = d - c;
  const Vec3 n1 = b1.cross(b2), n2 = b2.cross(b3);
  return std::atan2(b2.normalized().dot(n1.cross(n2)), n1.dot(n2));
}

// Natural extension reference frame: places d so that |c-d| = bond,
// angle(b,c,d) = ang and dihedral(a,b,c,d) = tor (degrees).
Vec3 nerf(const Vec3& a, const Vec3& b, const Vec3& c, double bond, double ang, double tor) {
  const double th = ang * kPi / 180.0;
  const double ph = tor * kPi / 180.0;
  const Vec3 bc = (c - b).normalized();
  const Vec3 ab = (b - a).normalized();
  const Vec3 n = ab.cross(bc).normalized();
  const Vec3 m = n.cross(bc);
  const Vec3 d = c + bond * (-std::cos(th) * bc + std::sin(th) * std::cos(ph) * m +
                             std::sin(th) * std::sin(ph) * n);
  return d;
}

struct Helix {
  std::vector<Atom> atoms;
};

// Polyglycine alpha helix, standard peptide geometry, phi/psi/omega given in
// degrees. Amide hydrogens from residue 2 on; no N-terminal hydrogen.
Helix helix(const kinex::RadiiTable& radii, int residues, double phi, double psi, double omega) {
  Helix h;
  int id = 0;
  auto push = [&](const std::string& name, const std::string& element, int res, const Vec3& p) {
    Atom a = make_atom(++id, element, p, radii);
    a.name = name;
    a.residue_name = "GLY";
    a.residue_id = res;
    a.chain_id = 'A';
    h.atoms.push_back(a);
    return p;
  };

  Vec3 n = Vec3(0, 0, 0);
  Vec3 ca = n + Vec3(1.458, 0, 0);
  const double ang = 111.2 * kPi / 180.0;
  Vec3 c = ca + 1.525 * Vec3(-std::cos(ang), std::sin(ang), 0);
  push("N", "N", 1, n);
  push("CA", "C", 1, ca);
  push("C", "C", 1, c);
  push("O", "O", 1, nerf(n, ca, c, 1.231, 120.1, psi + 180.0));

  for (int res = 2; res <= residues; ++res) {
    const Vec3 n_next = nerf(n, ca, c, 1.329, 116.2, psi);
    const Vec3 h_next = nerf(ca, c, n_next, 1.01, 119.15, 0.0);
    const Vec3 ca_next = nerf(ca, c, n_next, 1.458, 121.7, omega);
    const Vec3 c_next = nerf(c, n_next, ca_next, 1.525, 111.2, phi);
    const Vec3 o_next = nerf(n_next, ca_next, c_next, 1.231, 120.1, psi + 180.0);
    push("N", "N", res, n_next);
    push("H", "H", res, h_next);
    push("CA", "C", res, ca_next);
    push("C", "C", res, c_next);
    push("O", "O", res, o_next);
    n = n_next;
    ca = ca_next;
    c = c_next;
  }
  return h;
}

void report(const std::string& path, int atoms, int dofs, int hbonds, int obstacles) {
  std::printf("%-28s %4d atoms, %3d DOFs, %2d hydrogen bonds, %2d obstacles\n", path.c_str(),
              atoms, dofs, hbonds, obstacles);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "data";
  const kinex::RadiiTable radii = kinex::RadiiTable::standard();
  try {
    std::filesystem::create_directories(dir);

    {
      const Built f = dense_chain(radii);
      const int hb = check_fixture("dense_chain", f, 50, 0);
      std::vector<Vec3> pos;
      for (const auto& a : f.atoms) pos.push_back(a.position);
      const std::string path = dir + "/dense_chain.lnk";
      kinex::write_linkage_file(path, f.atoms, pos, as_bonds(f.bonds), {}, f.obstacles);
      report(path, static_cast<int>(f.atoms.size()), 50, hb,
             static_cast<int>(f.obstacles.size()));
    }
    {
      const Built f = elongated_chain(radii);
      const int hb = check_fixture("elongated_chain", f, 125, 0);
      std::vector<Vec3> pos;
      for (const auto& a : f.atoms) pos.push_back(a.position);
      const std::string path = dir + "/elongated_chain.lnk";
      kinex::write_linkage_file(path, f.atoms, pos, as_bonds(f.bonds), {}, {});
      report(path, static_cast<int>(f.atoms.size()), 125, hb, 0);
    }
    {
      const Built f = ladder(radii);
      const int dofs = 66;  // strand A 6+34, strand B 6+20
      const int hb = check_fixture("ladder", f, dofs, 5);
      std::vector<Vec3> pos;
      for (const auto& a : f.atoms) pos.push_back(a.position);
      const std::string path = dir + "/ladder.lnk";
      kinex::write_linkage_file(path, f.atoms, pos, as_bonds(f.bonds), {}, {});
      report(path, static_cast<int>(f.atoms.size()), dofs, hb, 0);
    }
    {
      const Helix h = helix(radii, 14, -57.0, -47.0, 180.0);
      Built f;
      f.atoms = h.atoms;
      const kinex::KinematicLinkage linkage = kinex::build_linkage(f.atoms);
      const kinex::CollisionModel collision(linkage, {});
      const kinex::FkResult fk = linkage.forward_kinematics(linkage.zero_conformation());
      const auto clash = collision.find_clashes(fk.positions);
      const auto hbonds = kinex::detect_hydrogen_bonds(linkage, fk);
      if (!clash.clash_free) {
        std::string msg = "helix: initial conformation clashes:";
        for (std::size_t i = 0; i < clash.pairs.size() && i < 8; ++i) {
          msg += " (" + std::to_string(clash.pairs[i].atom_i) + "," +
                 std::to_string(clash.pairs[i].atom_j) + ") overlap " +
                 std::to_string(clash.pairs[i].overlap);
        }
        throw kinex::ModelError(msg);
      }
      if (hbonds.size() < 5) {
        throw kinex::ModelError("helix: detected " + std::to_string(hbonds.size()) +
                                " hydrogen bonds, need 5");
      }
      std::vector<Vec3> pos;
      for (const auto& a : f.atoms) pos.push_back(a.position);
      const std::string path = dir + "/helix.pdb";
      kinex::write_pdb(path, f.atoms, pos);
      report(path, static_cast<int>(f.atoms.size()), linkage.dof_count(),
             static_cast<int>(hbonds.size()), 0);
    }
  } catch (const std::exception& e) {
    std::cerr << "make_fixtures: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
