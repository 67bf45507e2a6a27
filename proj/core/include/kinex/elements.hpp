//
// Copyright 2026 the kinex authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace kinex {

struct ElementRadii {
  double vdw = 0.0;       // van der Waals radius [A]
  double covalent = 0.0;  // covalent radius [A]
};

// Radii table keyed by element symbol. Ships with standard values for the
// common biomolecular elements and accepts user overrides.
class RadiiTable {
 public:
  // Built-in defaults (Bondi vdW / Pyykko covalent).
  static RadiiTable standard();

  std::optional<ElementRadii> lookup(std::string_view element) const;

  // Adds or replaces an entry.
  void set(std::string element, ElementRadii radii);

  // Reads override lines `ELEMENT vdw covalent`; '#' starts a comment.
  void load_overrides(const std::string& path);

 private:
  std::unordered_map<std::string, ElementRadii> table_;
};

// Normalizes an element symbol: trimmed, first letter upper-case, rest lower.
std::string normalize_element(std::string_view raw);

}  // namespace kinex
