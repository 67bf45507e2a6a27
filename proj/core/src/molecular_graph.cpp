//
// Copyright 2026 the kinex authors
// SPDX-License-Identifier: Apache-2.0
//

#include "kinex/molecular_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <set>
#include <unordered_set>

#include "kinex/error.hpp"
#include "kinex/log.hpp"
#include "kinex/residue_templates.hpp"

namespace kinex {

namespace {

constexpr double kBondSlack = 0.4;  // inference cutoff beyond summed covalent radii [A]

long long pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<long long>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

MolecularGraph::MolecularGraph(std::vector<int> atom_ids, std::vector<Bond> bonds)
    : atom_ids_(std::move(atom_ids)), bonds_(std::move(bonds)) {
  index_of_.reserve(atom_ids_.size());
  for (std::size_t i = 0; i < atom_ids_.size(); ++i) {
    auto [it, inserted] = index_of_.emplace(atom_ids_[i], static_cast<int>(i));
    if (!inserted) {
      throw ModelError("duplicate atom id " + std::to_string(atom_ids_[i]));
    }
  }
  adjacency_.assign(atom_ids_.size(), {});
  for (std::size_t b = 0; b < bonds_.size(); ++b) {
    Bond& bond = bonds_[b];
    if (bond.atom_i == bond.atom_j) {
      throw ModelError("self-loop bond on atom " + std::to_string(bond.atom_i));
    }
    if (!has_atom(bond.atom_i) || !has_atom(bond.atom_j)) {
      throw ModelError("bond references unknown atom id");
    }
    if (bond.atom_i > bond.atom_j) std::swap(bond.atom_i, bond.atom_j);
    auto [it, inserted] = bond_index_.emplace(pair_key(bond.atom_i, bond.atom_j),
                                              static_cast<int>(b));
    if (!inserted) {
      throw ModelError("duplicate bond between atoms " + std::to_string(bond.atom_i) +
                       " and " + std::to_string(bond.atom_j));
    }
    adjacency_[index_of(bond.atom_i)].push_back(bond.atom_j);
    adjacency_[index_of(bond.atom_j)].push_back(bond.atom_i);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

int MolecularGraph::index_of(int atom_id) const {
  auto it = index_of_.find(atom_id);
  if (it == index_of_.end()) {
    throw ModelError("unknown atom id " + std::to_string(atom_id));
  }
  return it->second;
}

const std::vector<int>& MolecularGraph::neighbors(int atom_id) const {
  return adjacency_[index_of(atom_id)];
}

bool MolecularGraph::has_bond(int a, int b) const {
  return bond_index_.count(pair_key(a, b)) > 0;
}

const Bond* MolecularGraph::find_bond(int a, int b) const {
  auto it = bond_index_.find(pair_key(a, b));
  return it == bond_index_.end() ? nullptr : &bonds_[it->second];
}

std::vector<std::pair<int, int>> MolecularGraph::pairs_within(int depth) const {
  std::set<std::pair<int, int>> pairs;
  for (int start : atom_ids_) {
    // BFS out to `depth` bonds.
    std::deque<std::pair<int, int>> queue{{start, 0}};
    std::unordered_set<int> seen{start};
    while (!queue.empty()) {
      auto [id, d] = queue.front();
      queue.pop_front();
      if (d == depth) continue;
      for (int nb : neighbors(id)) {
        if (seen.insert(nb).second) {
          pairs.emplace(std::min(start, nb), std::max(start, nb));
          queue.emplace_back(nb, d + 1);
        }
      }
    }
  }
  return {pairs.begin(), pairs.end()};
}

namespace {

// Assigns template bond orders to an inferred bond. Peptide C-N links between
// consecutive standard residues are partial double; everything else comes
// from the per-residue table.
BondOrder inferred_order(const Atom& a, const Atom& b) {
  const bool same_residue = a.chain_id == b.chain_id && a.residue_id == b.residue_id &&
                            a.residue_name == b.residue_name;
  if (same_residue) {
    if (auto o = template_bond_order(a.residue_name, a.name, b.name)) return *o;
    return BondOrder::single;
  }
  if (a.chain_id == b.chain_id && is_standard_amino_acid(a.residue_name) &&
      is_standard_amino_acid(b.residue_name)) {
    const bool fwd = a.name == "C" && b.name == "N" && b.residue_id == a.residue_id + 1;
    const bool rev = b.name == "C" && a.name == "N" && a.residue_id == b.residue_id + 1;
    if (fwd || rev) return BondOrder::partial_double;
  }
  return BondOrder::single;
}

}  // namespace

MolecularGraph build_molecular_graph(const std::vector<Atom>& atoms,
                                     const std::optional<std::vector<BondSpec>>& bonds,
                                     const std::vector<BondOrderOverride>& order_overrides) {
  if (atoms.empty()) throw ModelError("cannot build a molecular graph from zero atoms");
  for (const Atom& a : atoms) {
    if (!a.position.allFinite()) {
      throw ModelError("non-finite position on atom " + std::to_string(a.id));
    }
  }

  std::vector<int> ids;
  ids.reserve(atoms.size());
  for (const Atom& a : atoms) ids.push_back(a.id);

  std::vector<Bond> edges;
  if (bonds.has_value()) {
    edges.reserve(bonds->size());
    for (const BondSpec& s : *bonds) {
      edges.push_back({std::min(s.atom_i, s.atom_j), std::max(s.atom_i, s.atom_j), s.order});
    }
  } else {
    // Distance inference on a coarse cell grid; cell edge = the largest
    // possible bond length so only adjacent cells need scanning.
    double max_cov = 0.0;
    for (const Atom& a : atoms) max_cov = std::max(max_cov, a.covalent_radius);
    const double cell = std::max(2.0 * max_cov + kBondSlack, 1e-6);

    std::unordered_map<long long, std::vector<int>> grid;
    auto pack = [](long long cx, long long cy, long long cz) {
      return ((cx & 0x1fffffLL) << 42) | ((cy & 0x1fffffLL) << 21) | (cz & 0x1fffffLL);
    };
    auto coords = [cell](const Vec3& p) {
      return std::array<long long, 3>{static_cast<long long>(std::floor(p.x() / cell)),
                                      static_cast<long long>(std::floor(p.y() / cell)),
                                      static_cast<long long>(std::floor(p.z() / cell))};
    };
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const auto c = coords(atoms[i].position);
      grid[pack(c[0], c[1], c[2])].push_back(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Atom& a = atoms[i];
      const auto c = coords(a.position);
      for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
          for (int dz = -1; dz <= 1; ++dz) {
            auto it = grid.find(pack(c[0] + dx, c[1] + dy, c[2] + dz));
            if (it == grid.end()) continue;
            for (int j : it->second) {
              if (j <= static_cast<int>(i)) continue;
              const Atom& b = atoms[j];
              const double cutoff = a.covalent_radius + b.covalent_radius + kBondSlack;
              if ((a.position - b.position).norm() <= cutoff) {
                Bond bond{std::min(a.id, b.id), std::max(a.id, b.id), inferred_order(a, b)};
                edges.push_back(bond);
              }
            }
          }
    }
    std::sort(edges.begin(), edges.end(), [](const Bond& x, const Bond& y) {
      return std::tie(x.atom_i, x.atom_j) < std::tie(y.atom_i, y.atom_j);
    });
  }

  for (const BondOrderOverride& ov : order_overrides) {
    bool found = false;
    for (Bond& e : edges) {
      if ((e.atom_i == std::min(ov.atom_i, ov.atom_j)) &&
          (e.atom_j == std::max(ov.atom_i, ov.atom_j))) {
        e.order = ov.order;
        found = true;
        break;
      }
    }
    if (!found) {
      log_warning("bond-order override for missing bond " + std::to_string(ov.atom_i) +
                  "-" + std::to_string(ov.atom_j) + " ignored");
    }
  }

  MolecularGraph graph(std::move(ids), std::move(edges));

  if (!bonds.has_value()) {
    for (const Atom& a : atoms) {
      if (graph.neighbors(a.id).empty()) {
        log_warning("atom " + std::to_string(a.id) +
                    " has no inferred bonds; it becomes an isolated rigid body");
      }
    }
  }
  return graph;
}

}  // namespace kinex
