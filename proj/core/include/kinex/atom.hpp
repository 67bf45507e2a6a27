//
// Copyright 2026 the kinex authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>

#include "kinex/geometry.hpp"

namespace kinex {

struct Atom {
  int id = -1;              // unique within a linkage
  std::string element;      // normalized symbol ("C", "N", ...)
  Vec3 position = Vec3::Zero();  // reference coordinates [A]
  double vdw_radius = 0.0;       // > 0
  double covalent_radius = 0.0;  // > 0
  int residue_id = 0;
  std::string residue_name;  // "ALA", "PRO", ...; optional
  char chain_id = 'A';
  std::string name;          // PDB atom name ("CA", "OD1", ...); optional
};

}  // namespace kinex
