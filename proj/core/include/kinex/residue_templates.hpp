//
// Copyright 2026 the kinex authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "kinex/molecular_graph.hpp"

namespace kinex {

// Bond-order assignment for bonds between named atoms of standard residues:
// sp2 carbonyl/carboxyl/amide/guanidinium groups, aromatic rings, the proline
// and ribose rings. Returns nullopt when the template table has no opinion
// (the bond stays single).
std::optional<BondOrder> template_bond_order(std::string_view residue_name,
                                             std::string_view atom_a,
                                             std::string_view atom_b);

// True for the 20 standard amino acid residue names.
bool is_standard_amino_acid(std::string_view residue_name);

}  // namespace kinex
