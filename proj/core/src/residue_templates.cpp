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

#include "kinex/residue_templates.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace kinex {
namespace {

struct TemplateBond {
  const char* a;
  const char* b;
  BondOrder order;
};

// Bond-order templates for residues whose torsions must stay locked.
// Only orders above single are listed; anything absent falls back to a
// rotatable single bond. Atom names follow PDB v3 conventions.
const std::unordered_map<std::string, std::vector<TemplateBond>>& template_table() {
  static const auto* table = new std::unordered_map<std::string, std::vector<TemplateBond>>{
      {"ARG",
       {{"CZ", "NE", BondOrder::partial_double},
        {"CZ", "NH1", BondOrder::partial_double},
        {"CZ", "NH2", BondOrder::partial_double}}},
      {"ASP",
       {{"CG", "OD1", BondOrder::partial_double}, {"CG", "OD2", BondOrder::partial_double}}},
      {"GLU",
       {{"CD", "OE1", BondOrder::partial_double}, {"CD", "OE2", BondOrder::partial_double}}},
      {"ASN",
       {{"CG", "OD1", BondOrder::double_bond}, {"CG", "ND2", BondOrder::partial_double}}},
      {"GLN",
       {{"CD", "OE1", BondOrder::double_bond}, {"CD", "NE2", BondOrder::partial_double}}},
      {"HIS",
       {{"CG", "ND1", BondOrder::partial_double},
        {"CG", "CD2", BondOrder::partial_double},
        {"ND1", "CE1", BondOrder::partial_double},
        {"CD2", "NE2", BondOrder::partial_double},
        {"CE1", "NE2", BondOrder::partial_double}}},
      {"PHE",
       {{"CG", "CD1", BondOrder::partial_double},
        {"CG", "CD2", BondOrder::partial_double},
        {"CD1", "CE1", BondOrder::partial_double},
        {"CD2", "CE2", BondOrder::partial_double},
        {"CE1", "CZ", BondOrder::partial_double},
        {"CE2", "CZ", BondOrder::partial_double}}},
      {"TYR",
       {{"CG", "CD1", BondOrder::partial_double},
        {"CG", "CD2", BondOrder::partial_double},
        {"CD1", "CE1", BondOrder::partial_double},
        {"CD2", "CE2", BondOrder::partial_double},
        {"CE1", "CZ", BondOrder::partial_double},
        {"CE2", "CZ", BondOrder::partial_double}}},
      {"TRP",
       {{"CG", "CD1", BondOrder::partial_double},
        {"CG", "CD2", BondOrder::partial_double},
        {"CD1", "NE1", BondOrder::partial_double},
        {"NE1", "CE2", BondOrder::partial_double},
        {"CD2", "CE2", BondOrder::partial_double},
        {"CD2", "CE3", BondOrder::partial_double},
        {"CE2", "CZ2", BondOrder::partial_double},
        {"CE3", "CZ3", BondOrder::partial_double},
        {"CZ2", "CH2", BondOrder::partial_double},
        {"CZ3", "CH2", BondOrder::partial_double}}},
      {"PRO",
       {{"N", "CA", BondOrder::ring5},
        {"CA", "CB", BondOrder::ring5},
        {"CB", "CG", BondOrder::ring5},
        {"CG", "CD", BondOrder::ring5},
        {"CD", "N", BondOrder::ring5}}},
  };
  return *table;
}

// Ribose ring plus phosphate resonance, shared by all nucleotides.
const std::vector<TemplateBond>& nucleotide_common() {
  static const auto* bonds = new std::vector<TemplateBond>{
      {"C1'", "C2'", BondOrder::ring5},
      {"C2'", "C3'", BondOrder::ring5},
      {"C3'", "C4'", BondOrder::ring5},
      {"C4'", "O4'", BondOrder::ring5},
      {"O4'", "C1'", BondOrder::ring5},
      {"P", "OP1", BondOrder::partial_double},
      {"P", "OP2", BondOrder::partial_double},
  };
  return *bonds;
}

const std::unordered_map<std::string, std::vector<TemplateBond>>& nucleotide_base_table() {
  static const auto* table = new std::unordered_map<std::string, std::vector<TemplateBond>>{
      // Purines: fused 6-5 aromatic system.
      {"A",
       {{"N1", "C2", BondOrder::partial_double},
        {"C2", "N3", BondOrder::partial_double},
        {"N3", "C4", BondOrder::partial_double},
        {"C4", "C5", BondOrder::partial_double},
        {"C5", "C6", BondOrder::partial_double},
        {"C6", "N1", BondOrder::partial_double},
        {"C6", "N6", BondOrder::partial_double},
        {"C4", "N9", BondOrder::partial_double},
        {"C5", "N7", BondOrder::partial_double},
        {"N7", "C8", BondOrder::partial_double},
        {"C8", "N9", BondOrder::partial_double}}},
      {"G",
       {{"N1", "C2", BondOrder::partial_double},
        {"C2", "N2", BondOrder::partial_double},
        {"C2", "N3", BondOrder::partial_double},
        {"N3", "C4", BondOrder::partial_double},
        {"C4", "C5", BondOrder::partial_double},
        {"C5", "C6", BondOrder::partial_double},
        {"C6", "O6", BondOrder::double_bond},
        {"C6", "N1", BondOrder::partial_double},
        {"C4", "N9", BondOrder::partial_double},
        {"C5", "N7", BondOrder::partial_double},
        {"N7", "C8", BondOrder::partial_double},
        {"C8", "N9", BondOrder::partial_double}}},
      // Pyrimidines.
      {"C",
       {{"N1", "C2", BondOrder::partial_double},
        {"C2", "O2", BondOrder::double_bond},
        {"C2", "N3", BondOrder::partial_double},
        {"N3", "C4", BondOrder::partial_double},
        {"C4", "N4", BondOrder::partial_double},
        {"C4", "C5", BondOrder::partial_double},
        {"C5", "C6", BondOrder::partial_double},
        {"C6", "N1", BondOrder::partial_double}}},
      {"U",
       {{"N1", "C2", BondOrder::partial_double},
        {"C2", "O2", BondOrder::double_bond},
        {"C2", "N3", BondOrder::partial_double},
        {"N3", "C4", BondOrder::partial_double},
        {"C4", "O4", BondOrder::double_bond},
        {"C4", "C5", BondOrder::partial_double},
        {"C5", "C6", BondOrder::partial_double},
        {"C6", "N1", BondOrder::partial_double}}},
      {"T",
       {{"N1", "C2", BondOrder::partial_double},
        {"C2", "O2", BondOrder::double_bond},
        {"C2", "N3", BondOrder::partial_double},
        {"N3", "C4", BondOrder::partial_double},
        {"C4", "O4", BondOrder::double_bond},
        {"C4", "C5", BondOrder::partial_double},
        {"C5", "C6", BondOrder::partial_double},
        {"C6", "N1", BondOrder::partial_double}}},
  };
  return *table;
}

const std::unordered_set<std::string>& amino_acid_names() {
  static const auto* names = new std::unordered_set<std::string>{
      "ALA", "ARG", "ASN", "ASP", "CYS", "GLN", "GLU", "GLY", "HIS", "ILE",
      "LEU", "LYS", "MET", "PHE", "PRO", "SER", "THR", "TRP", "TYR", "VAL"};
  return *names;
}

// Maps PDB residue names (DA, DG, RU, ...) onto the one-letter base key.
std::string base_key(const std::string& res) {
  static const std::unordered_map<std::string, std::string> map{
      {"A", "A"},  {"DA", "A"}, {"RA", "A"}, {"G", "G"},  {"DG", "G"}, {"RG", "G"},
      {"C", "C"},  {"DC", "C"}, {"RC", "C"}, {"U", "U"},  {"RU", "U"}, {"T", "T"},
      {"DT", "T"}, {"RT", "T"}};
  auto it = map.find(res);
  return it == map.end() ? std::string{} : it->second;
}

std::optional<BondOrder> lookup(const std::vector<TemplateBond>& bonds, const std::string& a,
                                const std::string& b) {
  for (const auto& tb : bonds) {
    if ((a == tb.a && b == tb.b) || (a == tb.b && b == tb.a)) return tb.order;
  }
  return std::nullopt;
}

}  // namespace

bool is_standard_amino_acid(std::string_view residue_name) {
  return amino_acid_names().count(std::string(residue_name)) > 0;
}

std::optional<BondOrder> template_bond_order(std::string_view residue_name,
                                             std::string_view atom_a, std::string_view atom_b) {
  const std::string res(residue_name);
  const std::string a(atom_a);
  const std::string b(atom_b);
  if (is_standard_amino_acid(res)) {
    // Backbone carbonyl and the terminal carboxylate are common to all.
    if (auto o = lookup({{"C", "O", BondOrder::double_bond},
                         {"C", "OXT", BondOrder::partial_double}},
                        a, b))
      return o;
    auto it = template_table().find(res);
    if (it != template_table().end()) return lookup(it->second, a, b);
    return std::nullopt;
  }
  const std::string key = base_key(res);
  if (!key.empty()) {
    if (auto o = lookup(nucleotide_common(), a, b)) return o;
    auto it = nucleotide_base_table().find(key);
    if (it != nucleotide_base_table().end()) return lookup(it->second, a, b);
  }
  return std::nullopt;
}

}  // namespace kinex
