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

#include "kinex/constraint_file.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "kinex/error.hpp"
#include "kinex/log.hpp"

namespace kinex {
namespace {

int resolve(const std::vector<Atom>& atoms, const std::string& chain, int res,
            const std::string& name, int lineno) {
  if (chain.size() != 1) {
    throw ParseError("line " + std::to_string(lineno) + ": chain must be a single character, got '" +
                     chain + "'");
  }
  for (const Atom& a : atoms) {
    if (a.chain_id == chain[0] && a.residue_id == res && a.name == name) return a.id;
  }
  throw ParseError("line " + std::to_string(lineno) + ": no atom matches " + chain + "/" +
                   std::to_string(res) + "/" + name);
}

}  // namespace

std::vector<std::pair<int, int>> parse_constraint_file(const std::string& path,
                                                       const std::vector<Atom>& atoms) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open constraint file '" + path + "'");

  std::vector<std::pair<int, int>> out;
  std::set<std::pair<int, int>> seen;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    std::istringstream ss(hash == std::string::npos ? raw : raw.substr(0, hash));
    std::string keyword;
    if (!(ss >> keyword)) continue;
    if (keyword != "HBOND") {
      throw ParseError("line " + std::to_string(lineno) + ": unknown keyword '" + keyword + "'");
    }
    std::string chain1, name1, chain2, name2;
    int res1, res2;
    if (!(ss >> chain1 >> res1 >> name1 >> chain2 >> res2 >> name2)) {
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected 'HBOND chain res atom chain res atom'");
    }
    const int a = resolve(atoms, chain1, res1, name1, lineno);
    const int b = resolve(atoms, chain2, res2, name2, lineno);
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    if (!seen.insert(key).second) {
      log_warning("constraint file line " + std::to_string(lineno) + " duplicates an earlier line");
      continue;
    }
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace kinex
