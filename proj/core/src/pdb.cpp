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

#include "kinex/pdb.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "kinex/error.hpp"

namespace kinex {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Field by 1-based inclusive column range, padded when the line is short.
std::string field(const std::string& line, int from, int to) {
  std::string out;
  for (int c = from - 1; c < to; ++c) {
    out += c < static_cast<int>(line.size()) ? line[static_cast<std::size_t>(c)] : ' ';
  }
  return out;
}

double parse_coord(const std::string& text, int lineno, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (trim(text.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("line " + std::to_string(lineno) + ": malformed " + what + " field '" +
                   trim(text) + "'");
}

// Element symbol from the atom name when columns 77-78 are blank: digits and
// spaces stripped, first letter wins (remoteness digits like "1HB2" lead).
std::string element_from_name(const std::string& name) {
  for (char ch : name) {
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      return std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    }
  }
  return "";
}

bool is_water(const std::string& res) {
  return res == "HOH" || res == "WAT" || res == "DOD" || res == "H2O";
}

}  // namespace

std::vector<Atom> parse_pdb(const std::string& path, const PdbParseOptions& options,
                            const RadiiTable& radii) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open PDB file '" + path + "'");

  std::vector<Atom> atoms;
  std::string line;
  int lineno = 0;
  int next_id = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string record = field(line, 1, 6);
    if (record == "ENDMDL") break;
    if (record != "ATOM  " && record != "HETATM") continue;

    const char alt = field(line, 17, 17)[0];
    if (alt != ' ' && alt != 'A') continue;
    const std::string res_name = trim(field(line, 18, 20));
    if (options.skip_waters && is_water(res_name)) continue;
    const char chain = field(line, 22, 22)[0];
    if (options.chains && options.chains->count(chain) == 0) continue;

    Atom a;
    a.id = next_id++;
    a.name = trim(field(line, 13, 16));
    a.residue_name = res_name;
    a.chain_id = chain;
    const std::string res_seq = trim(field(line, 23, 26));
    try {
      a.residue_id = res_seq.empty() ? 0 : std::stoi(res_seq);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": malformed residue number '" +
                       res_seq + "'");
    }
    a.position = Vec3(parse_coord(field(line, 31, 38), lineno, "x"),
                      parse_coord(field(line, 39, 46), lineno, "y"),
                      parse_coord(field(line, 47, 54), lineno, "z"));
    a.element = trim(field(line, 77, 78));
    if (a.element.empty()) a.element = element_from_name(a.name);
    a.element = normalize_element(a.element);
    if (a.element.empty()) {
      throw ParseError("line " + std::to_string(lineno) + ": cannot determine element of atom '" +
                       a.name + "'");
    }
    const std::optional<ElementRadii> r = radii.lookup(a.element);
    if (!r) {
      throw ParseError("line " + std::to_string(lineno) + ": no radii known for element '" +
                       a.element + "'");
    }
    a.vdw_radius = r->vdw;
    a.covalent_radius = r->covalent;
    atoms.push_back(std::move(a));
  }
  if (atoms.empty()) throw ParseError("no usable ATOM/HETATM records in '" + path + "'");
  return atoms;
}

void write_pdb(const std::string& path, const std::vector<Atom>& atoms,
               const std::vector<Vec3>& positions) {
  if (atoms.size() != positions.size()) {
    throw ModelError("atom and position counts differ in PDB writer");
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write PDB file '" + path + "'");
  char buf[96];
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    // Single-letter elements start their name at column 14 by convention.
    std::string name = a.name;
    if (name.size() < 4 && a.element.size() == 1) name = " " + name;
    std::snprintf(buf, sizeof(buf),
                  "ATOM  %5d %-4s%c%-3s %c%4d    %8.3f%8.3f%8.3f%6.2f%6.2f          %2s",
                  a.id % 100000, name.substr(0, 4).c_str(), ' ', a.residue_name.c_str(),
                  a.chain_id, a.residue_id % 10000, positions[i].x(), positions[i].y(),
                  positions[i].z(), 1.0, 0.0, a.element.c_str());
    out << buf << '\n';
  }
  out << "END\n";
  if (!out) throw IoError("error while writing PDB file '" + path + "'");
}

}  // namespace kinex
