//
// Copyright 2026 the kinex authors
// SPDX-License-Identifier: Apache-2.0
//

#include "kinex/elements.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "kinex/error.hpp"

namespace kinex {

RadiiTable RadiiTable::standard() {
  RadiiTable t;
  t.table_ = {
      {"H", {1.20, 0.31}},
      {"C", {1.70, 0.77}},
      {"N", {1.55, 0.70}},
      {"O", {1.52, 0.66}},
      {"S", {1.80, 1.05}},
  };
  return t;
}

std::optional<ElementRadii> RadiiTable::lookup(std::string_view element) const {
  auto it = table_.find(std::string(element));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void RadiiTable::set(std::string element, ElementRadii radii) {
  table_[std::move(element)] = radii;
}

void RadiiTable::load_overrides(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open radii file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string sym;
    if (!(ss >> sym)) continue;  // blank
    ElementRadii r;
    if (!(ss >> r.vdw >> r.covalent) || r.vdw <= 0.0 || r.covalent <= 0.0) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": expected `ELEMENT vdw covalent` with positive radii");
    }
    set(normalize_element(sym), r);
  }
}

std::string normalize_element(std::string_view raw) {
  std::string s;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) return s;
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  for (std::size_t i = 1; i < s.size(); ++i) {
    s[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
  }
  return s;
}

}  // namespace kinex
