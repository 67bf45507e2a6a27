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

#include "kinex/linkage_file.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "kinex/error.hpp"

namespace kinex {
namespace {

std::string strip_comment(const std::string& line) {
  const std::size_t hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

BondOrder parse_order(const std::string& token, int lineno) {
  if (token == "single") return BondOrder::single;
  if (token == "double") return BondOrder::double_bond;
  if (token == "partial" || token == "partial_double") return BondOrder::partial_double;
  if (token == "ring5") return BondOrder::ring5;
  throw ParseError("line " + std::to_string(lineno) + ": unknown bond order '" + token + "'");
}

const char* order_token(BondOrder o) {
  switch (o) {
    case BondOrder::single: return "single";
    case BondOrder::double_bond: return "double";
    case BondOrder::partial_double: return "partial";
    case BondOrder::ring5: return "ring5";
  }
  return "single";
}

}  // namespace

LinkageInput parse_linkage_file(const std::string& path, const RadiiTable& radii) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open linkage file '" + path + "'");

  LinkageInput out;
  enum class Section { none, atoms, bonds, constraints, obstacles };
  Section section = Section::none;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ss(strip_comment(raw));
    std::string tok;
    if (!(ss >> tok)) continue;

    if (tok == "[atoms]") {
      section = Section::atoms;
      continue;
    }
    if (tok == "[bonds]") {
      section = Section::bonds;
      if (!out.bonds) out.bonds.emplace();
      continue;
    }
    if (tok == "[constraints]") {
      section = Section::constraints;
      continue;
    }
    if (tok == "[obstacles]") {
      section = Section::obstacles;
      continue;
    }

    switch (section) {
      case Section::none:
        throw ParseError("line " + std::to_string(lineno) + ": data before any section header");
      case Section::atoms: {
        Atom a;
        try {
          a.id = std::stoi(tok);
        } catch (const std::exception&) {
          throw ParseError("line " + std::to_string(lineno) + ": malformed atom id '" + tok + "'");
        }
        double x, y, z;
        if (!(ss >> a.element >> x >> y >> z)) {
          throw ParseError("line " + std::to_string(lineno) +
                           ": atom needs 'id element x y z [vdw covalent]'");
        }
        a.position = Vec3(x, y, z);
        a.element = normalize_element(a.element);
        double vdw, cov;
        if (ss >> vdw) {
          if (!(ss >> cov)) {
            throw ParseError("line " + std::to_string(lineno) +
                             ": atom radius override needs both vdw and covalent");
          }
          a.vdw_radius = vdw;
          a.covalent_radius = cov;
        } else {
          const std::optional<ElementRadii> r = radii.lookup(a.element);
          if (!r) {
            throw ParseError("line " + std::to_string(lineno) + ": no radii known for element '" +
                             a.element + "'");
          }
          a.vdw_radius = r->vdw;
          a.covalent_radius = r->covalent;
        }
        out.atoms.push_back(std::move(a));
        break;
      }
      case Section::bonds: {
        BondSpec b;
        try {
          b.atom_i = std::stoi(tok);
        } catch (const std::exception&) {
          throw ParseError("line " + std::to_string(lineno) + ": malformed atom id '" + tok + "'");
        }
        if (!(ss >> b.atom_j)) {
          throw ParseError("line " + std::to_string(lineno) + ": bond needs two atom ids");
        }
        std::string order;
        if (ss >> order) b.order = parse_order(order, lineno);
        out.bonds->push_back(b);
        break;
      }
      case Section::constraints: {
        int a, b;
        try {
          a = std::stoi(tok);
        } catch (const std::exception&) {
          throw ParseError("line " + std::to_string(lineno) + ": malformed atom id '" + tok + "'");
        }
        if (!(ss >> b)) {
          throw ParseError("line " + std::to_string(lineno) + ": constraint needs two atom ids");
        }
        out.constraint_pairs.emplace_back(a, b);
        break;
      }
      case Section::obstacles: {
        double x, y, z, r;
        try {
          x = std::stod(tok);
        } catch (const std::exception&) {
          throw ParseError("line " + std::to_string(lineno) + ": malformed coordinate '" + tok +
                           "'");
        }
        if (!(ss >> y >> z >> r)) {
          throw ParseError("line " + std::to_string(lineno) + ": obstacle needs 'x y z radius'");
        }
        if (!(r > 0)) {
          throw ParseError("line " + std::to_string(lineno) + ": obstacle radius must be positive");
        }
        out.obstacles.push_back({Vec3(x, y, z), r});
        break;
      }
    }
  }
  if (out.atoms.empty()) throw ParseError("linkage file '" + path + "' declares no atoms");
  return out;
}

void write_linkage_file(const std::string& path, const std::vector<Atom>& atoms,
                        const std::vector<Vec3>& positions, const std::vector<Bond>& bonds,
                        const std::vector<std::pair<int, int>>& constraint_pairs,
                        const std::vector<Obstacle>& obstacles) {
  if (atoms.size() != positions.size()) {
    throw ModelError("atom and position counts differ in linkage writer");
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write linkage file '" + path + "'");
  char num[3][32];
  out << "[atoms]\n";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    std::snprintf(num[0], sizeof(num[0]), "%.17g", positions[i].x());
    std::snprintf(num[1], sizeof(num[1]), "%.17g", positions[i].y());
    std::snprintf(num[2], sizeof(num[2]), "%.17g", positions[i].z());
    out << atoms[i].id << ' ' << atoms[i].element << ' ' << num[0] << ' ' << num[1] << ' '
        << num[2];
    std::snprintf(num[0], sizeof(num[0]), "%.17g", atoms[i].vdw_radius);
    std::snprintf(num[1], sizeof(num[1]), "%.17g", atoms[i].covalent_radius);
    out << ' ' << num[0] << ' ' << num[1] << '\n';
  }
  out << "[bonds]\n";
  for (const Bond& b : bonds) {
    out << b.atom_i << ' ' << b.atom_j << ' ' << order_token(b.order) << '\n';
  }
  if (!constraint_pairs.empty()) {
    out << "[constraints]\n";
    for (const auto& [a, b] : constraint_pairs) out << a << ' ' << b << '\n';
  }
  if (!obstacles.empty()) {
    out << "[obstacles]\n";
    for (const Obstacle& o : obstacles) {
      std::snprintf(num[0], sizeof(num[0]), "%.17g", o.position.x());
      std::snprintf(num[1], sizeof(num[1]), "%.17g", o.position.y());
      std::snprintf(num[2], sizeof(num[2]), "%.17g", o.position.z());
      out << num[0] << ' ' << num[1] << ' ' << num[2] << ' ';
      std::snprintf(num[0], sizeof(num[0]), "%.17g", o.radius);
      out << num[0] << '\n';
    }
  }
  if (!out) throw IoError("error while writing linkage file '" + path + "'");
}

}  // namespace kinex
