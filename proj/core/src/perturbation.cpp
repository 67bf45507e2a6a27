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

#include "kinex/perturbation.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "kinex/error.hpp"

namespace kinex {

NikSolver::NikSolver(const KinematicLinkage& linkage, const Metric& metric,
                     const CollisionModel& collision,
                     std::vector<HolonomicConstraint> constraints, const FkResult& reference_fk,
                     NikSolverConfig config)
    : linkage_(&linkage),
      metric_(&metric),
      collision_(&collision),
      constraints_(std::move(constraints)),
      config_(config) {
  frames_ = capture_frames(linkage, reference_fk, constraints_);
}

Eigen::VectorXd NikSolver::violation(const FkResult& fk) const {
  return constraint_violation(*linkage_, fk, constraints_, frames_);
}

NikSolver::Seed NikSolver::prepare_seed(const Eigen::VectorXd& q) const {
  Seed seed;
  seed.q = q;
  seed.fk = linkage_->forward_kinematics(q);

  const ClashReport report = collision_->find_clashes(seed.fk.positions);
  if (!report.clash_free) {
    std::string msg = "infeasible seed: clashing pairs";
    for (std::size_t i = 0; i < report.pairs.size() && i < 8; ++i) {
      msg += " (" + std::to_string(report.pairs[i].atom_i) + "," +
             std::to_string(report.pairs[i].atom_j) + ")";
    }
    if (report.pairs.size() > 8) msg += " ...";
    throw ModelError(msg);
  }
  if (!constraints_.empty()) {
    const Eigen::VectorXd phi = violation(seed.fk);
    const double worst = phi.cwiseAbs().maxCoeff();
    if (worst > config_.feasibility_tol) {
      throw ModelError("infeasible seed: constraint violation " + std::to_string(worst) +
                       " exceeds tolerance " + std::to_string(config_.feasibility_tol));
    }
  }

  seed.jacobian = assemble_jacobian(*linkage_, seed.fk, constraints_);
  seed.null_basis = nullspace(seed.jacobian);
  return seed;
}

PerturbationResult NikSolver::perturb(const Seed& seed, double sigma, int k, Rng& rng) const {
  if (!(sigma > 0)) throw ModelError("perturbation step length must be positive");
  if (k < 0) throw ModelError("dCC round budget must be non-negative");

  PerturbationResult res;
  res.delta_trial = sigma * metric_->random_direction(rng);

  std::vector<ClashConstraint> dcc;
  std::set<std::pair<int, int>> constrained;
  NullspaceBasis basis = seed.null_basis;

  // Positions at the seed, extended with the static obstacles, for freezing
  // contact normals at the pre-perturbation geometry.
  auto seed_position = [&](int id) -> Vec3 {
    if (linkage_->graph().has_atom(id)) return seed.fk.positions[linkage_->atom_index(id)];
    return collision_->obstacles()[id - collision_->obstacle_base_id()].position;
  };

  for (int round = 0;; ++round) {
    res.iterations_used = round;
    if (round > 0) {
      const ConstraintJacobian jac = assemble_jacobian(*linkage_, seed.fk, constraints_, dcc);
      basis = nullspace(jac);
    }

    Eigen::VectorXd dq = project(basis, res.delta_trial);
    const double len = metric_->norm(dq);
    if (len < config_.degenerate_tol * sigma) {
      res.status = NikStatus::degenerate;
      res.delta_admissible = dq;
      return res;
    }
    dq *= sigma / len;

    const Eigen::VectorXd q_new = linkage_->wrap(seed.q + dq);
    FkResult fk_new = linkage_->forward_kinematics(q_new);
    const ClashReport report = collision_->find_clashes(fk_new.positions);

    res.delta_admissible = dq;
    res.q_new = q_new;
    if (report.clash_free) {
      res.status = NikStatus::accepted;
      if (!constraints_.empty()) res.violation_max = violation(fk_new).cwiseAbs().maxCoeff();
      res.positions_new = std::move(fk_new.positions);
      return res;
    }
    if (round == k) {
      res.status = NikStatus::clash_unresolved;
      res.positions_new = std::move(fk_new.positions);
      return res;
    }

    // Constrain the worst-overlapping new pairs, normals frozen at the seed.
    int added = 0;
    for (const ClashPair& pair : report.pairs) {
      if (!constrained.insert({pair.atom_i, pair.atom_j}).second) continue;
      ClashConstraint cc;
      cc.atom_i = pair.atom_i;
      cc.atom_j = pair.atom_j;
      cc.normal = (seed_position(pair.atom_j) - seed_position(pair.atom_i)).normalized();
      dcc.push_back(cc);
      res.clash_constraints_added.push_back(cc);
      if (++added == config_.clash_pair_cap) break;
    }
    if (added == 0) {
      // Every clashing pair is already constrained; another round would
      // reproduce the same projection.
      res.status = NikStatus::clash_unresolved;
      res.positions_new = std::move(fk_new.positions);
      return res;
    }
  }
}

}  // namespace kinex
