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

#ifndef KINEX_PLANNERS_HPP_
#define KINEX_PLANNERS_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>

#include "kinex/exploration_tree.hpp"
#include "kinex/perturbation.hpp"

namespace kinex {

enum class PlannerMode { poisson, binned_rrt, mcl };
enum class NeighborSearch { bvh, linear };
enum class AttemptOutcome { accepted, clash_rejected, disk_rejected, degenerate };

std::string to_string(AttemptOutcome o);

struct PlannerConfig {
  PlannerMode mode = PlannerMode::poisson;
  double r = 0.5;                // Poisson inner radius
  int attempts_per_seed = 20;    // P
  double exploration_radius = 5; // R (binned RRT)
  double sigma = 0.1;            // step length (binned RRT, MCl)
  int iterations = 1000;         // I (binned RRT, MCl)
  int dcc_rounds = 5;            // k
  int max_samples = 10000;
  std::uint64_t rng_seed = 0;
  NeighborSearch neighbor_search = NeighborSearch::bvh;
  bool parallel = false;         // evaluate one seed's attempts concurrently
};

struct AttemptRecord {
  long long attempt = 0;  // 1-based, global
  int seed_id = -1;
  AttemptOutcome outcome = AttemptOutcome::degenerate;
  double distance_to_init = 0;
  long long distance_computations_cumulative = 0;
  int dcc_rounds_used = 0;
  int node_id = -1;  // id of the accepted node, -1 otherwise
};

struct PlannerStats {
  long long attempts = 0;
  long long accepted = 0;
  long long clash_rejected = 0;
  long long disk_rejected = 0;
  long long degenerate = 0;
};

struct PlannerRun {
  ExplorationTree tree;
  PlannerStats stats;
  double wall_seconds = 0;
  // Poisson bookkeeping at termination; the ensemble is open + closed.
  long long open_count = 0;
  long long closed_count = 0;
};

using AttemptCallback = std::function<void(const AttemptRecord&)>;

// Poisson-disk exploration: pop a random open seed, collect its conflict
// candidates once, make P perturbation attempts with target step lengths
// drawn from [r, 2r], and accept samples that are clash-free and farther
// than r from every existing conformation.
PlannerRun poisson_explore(const NikSolver& solver, const Eigen::VectorXd& q_init,
                           const PlannerConfig& cfg, const AttemptCallback& on_attempt = {});

// Binned RRT baseline: 101 distance bins over [0, R]; each iteration seeds
// from the bin member nearest a random conformation and perturbs by sigma.
PlannerRun binned_rrt(const NikSolver& solver, const Eigen::VectorXd& q_init,
                      const PlannerConfig& cfg, const AttemptCallback& on_attempt = {});

// Monte Carlo random walk baseline: advance on acceptance, stay otherwise.
PlannerRun mcl_walk(const NikSolver& solver, const Eigen::VectorXd& q_init,
                    const PlannerConfig& cfg, const AttemptCallback& on_attempt = {});

PlannerRun plan(const NikSolver& solver, const Eigen::VectorXd& q_init, const PlannerConfig& cfg,
                const AttemptCallback& on_attempt = {});

}  // namespace kinex

#endif  // KINEX_PLANNERS_HPP_
