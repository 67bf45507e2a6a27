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

#ifndef KINEX_ANALYSIS_HPP_
#define KINEX_ANALYSIS_HPP_

#include <Eigen/Core>
#include <string>
#include <vector>

#include "kinex/geometry.hpp"
#include "kinex/planners.hpp"

namespace kinex {

struct CorrelationMatrix {
  Eigen::MatrixXd values;
  std::vector<int> atom_selection;  // ids, row/column order
};

// Normalized displacement covariance over an ensemble of position frames.
// frames[k][s] is the position of selection entry s in conformation k.
// Entries with displacement variance below 1e-12 A^2 are set to 0: at the
// immobile limit the normalization is 0/0 and "no detectable coupling" is
// the honest answer.
CorrelationMatrix correlation_matrix(const std::vector<std::vector<Vec3>>& frames,
                                     const std::vector<int>& atom_selection);

// Optimal rotation aligning moving onto fixed in the least-squares sense,
// after both are centered. Proper rotation guaranteed (determinant +1).
Mat3 kabsch_rotation(const std::vector<Vec3>& fixed, const std::vector<Vec3>& moving);

double rmsd(const std::vector<Vec3>& a, const std::vector<Vec3>& b, bool superpose);

struct RejectionRow {
  std::string label;
  long long attempts = 0;
  long long accepted = 0;
  long long clash_rejected = 0;
  long long disk_rejected = 0;
  long long degenerate = 0;
  // Formatted percentages, "n/a" when attempts = 0.
  std::string clash_rate;
  std::string disk_reject_rate;
};

struct EnsembleStats {
  std::vector<RejectionRow> rows;
};

EnsembleStats rejection_table(const std::vector<std::pair<std::string, PlannerStats>>& runs);
std::string rejection_csv(const EnsembleStats& stats);

std::string correlation_csv(const CorrelationMatrix& c);

}  // namespace kinex

#endif  // KINEX_ANALYSIS_HPP_
