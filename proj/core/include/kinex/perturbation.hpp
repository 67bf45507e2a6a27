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

#ifndef KINEX_PERTURBATION_HPP_
#define KINEX_PERTURBATION_HPP_

#include <Eigen/Core>
#include <vector>

#include "kinex/collision.hpp"
#include "kinex/constraints.hpp"
#include "kinex/linkage.hpp"
#include "kinex/metric.hpp"
#include "kinex/rng.hpp"

namespace kinex {

enum class NikStatus { accepted, clash_unresolved, degenerate };

struct PerturbationResult {
  NikStatus status = NikStatus::degenerate;
  Eigen::VectorXd delta_trial;
  Eigen::VectorXd delta_admissible;
  Eigen::VectorXd q_new;
  std::vector<Vec3> positions_new;
  double violation_max = 0;  // max |Phi| at q_new when accepted; drift past
                             // feasibility_tol means q_new cannot seed again
  std::vector<ClashConstraint> clash_constraints_added;
  int iterations_used = 0;  // dCC rounds performed, <= k
};

struct NikSolverConfig {
  int clash_pair_cap = 10;        // worst-overlap pairs constrained per round
  double degenerate_tol = 1e-8;   // relative to sigma
  double feasibility_tol = 0.1;   // max |Phi| accepted for a seed
};

// Nullspace inverse kinematics over one linkage with a fixed holonomic
// constraint set. A prepared seed caches the forward kinematics, constraint
// Jacobian, and nullspace basis so that many perturbation attempts can reuse
// them; perturb() is const and safe to call concurrently for one seed.
class NikSolver {
 public:
  // reference_fk is the conformation where the constraints were captured;
  // violations are measured against its geometry.
  NikSolver(const KinematicLinkage& linkage, const Metric& metric,
            const CollisionModel& collision, std::vector<HolonomicConstraint> constraints,
            const FkResult& reference_fk, NikSolverConfig config = {});

  struct Seed {
    Eigen::VectorXd q;
    FkResult fk;
    ConstraintJacobian jacobian;   // holonomic rows only
    NullspaceBasis null_basis;
  };

  // Evaluates FK and the constraint nullspace at q. Throws ModelError when q
  // clashes or violates the captured constraints beyond feasibility_tol.
  Seed prepare_seed(const Eigen::VectorXd& q) const;

  // One NIK_k attempt: draw delta_trial of metric length sigma, project onto
  // the nullspace, rescale to sigma, and resolve clashes with up to k rounds
  // of dynamic clash-avoiding constraints, reprojecting the original
  // delta_trial each round.
  PerturbationResult perturb(const Seed& seed, double sigma, int k, Rng& rng) const;

  const KinematicLinkage& linkage() const { return *linkage_; }
  const Metric& metric() const { return *metric_; }
  const CollisionModel& collision() const { return *collision_; }
  const std::vector<HolonomicConstraint>& constraints() const { return constraints_; }
  const ConstraintFrames& frames() const { return frames_; }
  const NikSolverConfig& config() const { return config_; }

  // Phi relative to the frames captured at construction.
  Eigen::VectorXd violation(const FkResult& fk) const;

 private:
  const KinematicLinkage* linkage_;
  const Metric* metric_;
  const CollisionModel* collision_;
  std::vector<HolonomicConstraint> constraints_;
  ConstraintFrames frames_;
  NikSolverConfig config_;
};

}  // namespace kinex

#endif  // KINEX_PERTURBATION_HPP_
