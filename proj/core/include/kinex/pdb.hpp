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

#ifndef KINEX_PDB_HPP_
#define KINEX_PDB_HPP_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kinex/atom.hpp"
#include "kinex/elements.hpp"
#include "kinex/geometry.hpp"

namespace kinex {

struct PdbParseOptions {
  std::optional<std::set<char>> chains;  // keep only these chains when set
  bool skip_waters = true;
};

// Fixed-column ATOM/HETATM reader (format v3.3). Alternate locations other
// than ' ' or 'A' are skipped; only the first model of a multi-model file is
// read. Atom ids are assigned sequentially from 1 in file order.
std::vector<Atom> parse_pdb(const std::string& path, const PdbParseOptions& options = {},
                            const RadiiTable& radii = RadiiTable::standard());

// Writes one conformation; positions indexed like atoms.
void write_pdb(const std::string& path, const std::vector<Atom>& atoms,
               const std::vector<Vec3>& positions);

}  // namespace kinex

#endif  // KINEX_PDB_HPP_
