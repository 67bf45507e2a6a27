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

#ifndef KINEX_RUN_HPP_
#define KINEX_RUN_HPP_

#include <string>

#include "kinex/collision.hpp"
#include "kinex/constraints.hpp"
#include "kinex/metric.hpp"
#include "kinex/perturbation.hpp"
#include "kinex/planners.hpp"

namespace kinex {

std::string to_string(PlannerMode m);
PlannerMode planner_mode_from_string(const std::string& s);
std::string to_string(NeighborSearch n);
NeighborSearch neighbor_search_from_string(const std::string& s);

// Everything one sampling run depends on. The resolved copy of this struct
// is written to manifest.json; rerunning from that manifest reproduces
// stats.csv byte for byte.
struct RunConfig {
  std::string input_path;
  std::string input_kind = "auto";  // auto | pdb | lnk
  std::string chains;               // PDB chain filter, empty keeps all
  std::string constraints_path;     // optional explicit constraint list
  std::string radii_path;           // optional radii overrides
  std::string output_dir = "kinex_out";
  bool write_ensemble = true;

  PlannerConfig planner;
  MetricConfig metric;
  CollisionConfig collision;
  HydrogenBondCriteria hbond;
  NikSolverConfig nik;
};

struct RunOutput {
  PlannerStats stats;
  int tree_size = 0;
  int dof_count = 0;
  int atom_count = 0;
  int holonomic_constraints = 0;
  long long distance_computations = 0;
  double wall_seconds = 0;
  std::string stats_path;
  std::string tree_path;
  std::string rejection_path;
  std::string manifest_path;
  std::string ensemble_dir;  // empty when the ensemble is not written
};

// Loads the input, builds the model, runs the configured planner from the
// file conformation, and writes stats.csv, tree.txt, rejection.csv,
// manifest.json, and optionally the ensemble under output_dir.
RunOutput run(const RunConfig& config);

std::string manifest_json(const RunConfig& config);
RunConfig config_from_manifest(const std::string& path);

}  // namespace kinex

#endif  // KINEX_RUN_HPP_
