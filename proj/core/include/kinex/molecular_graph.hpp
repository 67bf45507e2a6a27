//
// Copyright 2026 the kinex authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "kinex/atom.hpp"

namespace kinex {

enum class BondOrder { single, double_bond, partial_double, ring5 };

struct Bond {
  int atom_i = -1;  // atom ids, unordered pair; stored with atom_i < atom_j
  int atom_j = -1;
  BondOrder order = BondOrder::single;
};

// Covalent bond graph. Simple graph over atom ids: no self loops, no
// duplicate edges.
class MolecularGraph {
 public:
  MolecularGraph() = default;
  MolecularGraph(std::vector<int> atom_ids, std::vector<Bond> bonds);

  const std::vector<int>& atom_ids() const { return atom_ids_; }
  const std::vector<Bond>& bonds() const { return bonds_; }

  bool has_atom(int id) const { return index_of_.count(id) > 0; }
  int index_of(int atom_id) const;  // dense index in atom_ids()

  // Neighbor atom ids, sorted ascending.
  const std::vector<int>& neighbors(int atom_id) const;

  bool has_bond(int a, int b) const;
  const Bond* find_bond(int a, int b) const;

  // Pairs within `depth` covalent bonds of each other (1-2, 1-3, ... pairs).
  // Used for clash exclusions.
  std::vector<std::pair<int, int>> pairs_within(int depth) const;

 private:
  std::vector<int> atom_ids_;
  std::vector<Bond> bonds_;
  std::unordered_map<int, int> index_of_;
  std::vector<std::vector<int>> adjacency_;  // by dense index, sorted
  std::unordered_map<long long, int> bond_index_;
};

// Explicit bond list for construction; order tags are used verbatim.
struct BondSpec {
  int atom_i = -1;
  int atom_j = -1;
  BondOrder order = BondOrder::single;
};

// Overrides the template-assigned order of one bond, addressed by atom ids.
struct BondOrderOverride {
  int atom_i = -1;
  int atom_j = -1;
  BondOrder order = BondOrder::single;
};

// Builds the covalent graph. With explicit bonds they are used verbatim;
// otherwise a bond is inferred between atoms i, j whenever
// |p_i - p_j| <= cov_i + cov_j + 0.4 A, and bond orders are assigned from the
// built-in residue templates (peptide C-N partial double, sp2 groups,
// aromatic rings) plus any explicit overrides.
MolecularGraph build_molecular_graph(
    const std::vector<Atom>& atoms,
    const std::optional<std::vector<BondSpec>>& bonds = std::nullopt,
    const std::vector<BondOrderOverride>& order_overrides = {});

}  // namespace kinex
