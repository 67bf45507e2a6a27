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

#ifndef KINEX_CONSTRAINT_FILE_HPP_
#define KINEX_CONSTRAINT_FILE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "kinex/atom.hpp"

namespace kinex {

// Reads lines of the form
//   HBOND <chain1> <res1> <atom1> <chain2> <res2> <atom2>
// and resolves them against the atom list. Unresolvable references are
// errors; duplicate lines are dropped with a warning.
std::vector<std::pair<int, int>> parse_constraint_file(const std::string& path,
                                                       const std::vector<Atom>& atoms);

}  // namespace kinex

#endif  // KINEX_CONSTRAINT_FILE_HPP_
