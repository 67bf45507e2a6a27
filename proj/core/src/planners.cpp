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

#include "kinex/planners.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <future>
#include <vector>

#include "kinex/error.hpp"

namespace kinex {
namespace {

// Substream tags keeping planner-level draws disjoint from per-attempt ones.
constexpr std::uint64_t kMainStream = 1ULL << 40;
constexpr std::uint64_t kIterStream = 2ULL << 40;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void tally(PlannerStats& stats, AttemptOutcome outcome) {
  ++stats.attempts;
  switch (outcome) {
    case AttemptOutcome::accepted: ++stats.accepted; break;
    case AttemptOutcome::clash_rejected: ++stats.clash_rejected; break;
    case AttemptOutcome::disk_rejected: ++stats.disk_rejected; break;
    case AttemptOutcome::degenerate: ++stats.degenerate; break;
  }
}

void validate_common(const PlannerConfig& cfg) {
  if (cfg.max_samples < 1) throw ModelError("max_samples must be at least 1");
  if (cfg.dcc_rounds < 0) throw ModelError("dCC round budget must be non-negative");
}

}  // namespace

std::string to_string(AttemptOutcome o) {
  switch (o) {
    case AttemptOutcome::accepted: return "accepted";
    case AttemptOutcome::clash_rejected: return "clash_rejected";
    case AttemptOutcome::disk_rejected: return "disk_rejected";
    case AttemptOutcome::degenerate: return "degenerate";
  }
  return "unknown";
}

PlannerRun poisson_explore(const NikSolver& solver, const Eigen::VectorXd& q_init,
                           const PlannerConfig& cfg, const AttemptCallback& on_attempt) {
  validate_common(cfg);
  if (!(cfg.r > 0)) throw ModelError("Poisson inner radius must be positive");
  if (cfg.attempts_per_seed < 0) throw ModelError("attempts per seed must be non-negative");

  Timer timer;
  const Metric& metric = solver.metric();
  solver.prepare_seed(q_init);  // feasibility gate before any sampling

  PlannerRun run{ExplorationTree(metric, q_init)};
  ExplorationTree& tree = run.tree;
  std::vector<int> open{0};
  long long closed = 0;
  long long attempt_no = 0;

  Rng main_rng = make_substream(cfg.rng_seed, kMainStream, 0);
  bool capped = false;

  while (!open.empty() && !capped) {
    const std::size_t pick = uniform_index(main_rng, open.size());
    const int seed_id = open[pick];
    open.erase(open.begin() + static_cast<long>(pick));

    const NikSolver::Seed seed = solver.prepare_seed(tree.node(seed_id).q);

    // Conflict candidates for this seed. In bvh mode the pruned collect runs
    // once and accepted siblings are appended: any node outside it is more
    // than 3r from the seed, hence more than r from any sample within 2r.
    // Linear mode scans every node at each attempt.
    std::vector<int> candidates;
    if (cfg.neighbor_search == NeighborSearch::bvh) {
      candidates = tree.bvh_collect(seed_id, cfg.r);
    }

    // One attempt's perturbation work, independent of the shared tree.
    auto evaluate = [&](int a) {
      Rng rng = make_substream(cfg.rng_seed, static_cast<std::uint64_t>(seed_id),
                               static_cast<std::uint64_t>(a));
      const double target = uniform_in(rng, cfg.r, 2 * cfg.r);
      return solver.perturb(seed, target, cfg.dcc_rounds, rng);
    };

    std::vector<std::future<PerturbationResult>> batch;
    if (cfg.parallel) {
      batch.reserve(cfg.attempts_per_seed);
      for (int a = 0; a < cfg.attempts_per_seed; ++a) {
        batch.push_back(std::async(std::launch::async, evaluate, a));
      }
    }

    for (int a = 0; a < cfg.attempts_per_seed; ++a) {
      if (tree.size() >= cfg.max_samples) {
        capped = true;
        break;
      }
      const PerturbationResult res = cfg.parallel ? batch[a].get() : evaluate(a);

      AttemptRecord rec;
      rec.attempt = ++attempt_no;
      rec.seed_id = seed_id;
      rec.dcc_rounds_used = res.iterations_used;

      if (res.status == NikStatus::degenerate) {
        rec.outcome = AttemptOutcome::degenerate;
        rec.distance_to_init = metric.distance(seed.q, tree.node(0).q);
      } else if (res.status == NikStatus::clash_unresolved) {
        rec.outcome = AttemptOutcome::clash_rejected;
        rec.distance_to_init = metric.distance(res.q_new, tree.node(0).q);
      } else if (res.violation_max > solver.config().feasibility_tol) {
        // Second-order drift pushed q_new off the constraint manifold; it
        // fails the same feasibility gate as a clash and could never be
        // prepared as a seed later.
        rec.outcome = AttemptOutcome::clash_rejected;
        rec.distance_to_init = metric.distance(res.q_new, tree.node(0).q);
      } else {
        rec.distance_to_init = metric.distance(res.q_new, tree.node(0).q);
        bool disk_ok = true;
        if (cfg.neighbor_search == NeighborSearch::bvh) {
          for (int id : candidates) {
            tree.add_distance_computations(1);
            if (metric.distance(res.q_new, tree.node(id).q) <= cfg.r) {
              disk_ok = false;
              break;
            }
          }
        } else {
          for (int id = 0; id < tree.size(); ++id) {
            tree.add_distance_computations(1);
            if (metric.distance(res.q_new, tree.node(id).q) <= cfg.r) {
              disk_ok = false;
              break;
            }
          }
        }
        if (disk_ok) {
          rec.outcome = AttemptOutcome::accepted;
          rec.node_id = tree.insert(res.q_new, seed_id);
          open.push_back(rec.node_id);
          if (cfg.neighbor_search == NeighborSearch::bvh) candidates.push_back(rec.node_id);
        } else {
          rec.outcome = AttemptOutcome::disk_rejected;
        }
      }

      tally(run.stats, rec.outcome);
      rec.distance_computations_cumulative = tree.distance_computations();
      if (on_attempt) on_attempt(rec);
    }
    ++closed;
  }

  run.open_count = static_cast<long long>(open.size());
  run.closed_count = closed;
  run.wall_seconds = timer.seconds();
  return run;
}

PlannerRun binned_rrt(const NikSolver& solver, const Eigen::VectorXd& q_init,
                      const PlannerConfig& cfg, const AttemptCallback& on_attempt) {
  validate_common(cfg);
  if (!(cfg.exploration_radius > 0)) throw ModelError("exploration radius must be positive");
  if (!(cfg.sigma > 0)) throw ModelError("step length must be positive");
  if (cfg.iterations < 1) throw ModelError("iteration budget must be positive");

  Timer timer;
  const Metric& metric = solver.metric();
  const KinematicLinkage& linkage = solver.linkage();
  solver.prepare_seed(q_init);

  PlannerRun run{ExplorationTree(metric, q_init)};
  ExplorationTree& tree = run.tree;
  std::array<std::vector<int>, 101> bins;
  bins[0].push_back(0);

  const double R = cfg.exploration_radius;
  const double pi = std::acos(-1.0);

  for (int iter = 0; iter < cfg.iterations && tree.size() < cfg.max_samples; ++iter) {
    Rng rng = make_substream(cfg.rng_seed, kIterStream, static_cast<std::uint64_t>(iter));

    // Random target conformation; revolute DOFs uniform on the circle,
    // global DOFs left at zero (they carry no metric weight by default).
    Eigen::VectorXd q_rand = Eigen::VectorXd::Zero(linkage.dof_count());
    for (int k = 0; k < linkage.dof_count(); ++k) {
      if (linkage.is_revolute(k)) q_rand[k] = wrap_angle(uniform_in(rng, -pi, pi));
    }

    std::vector<int> non_empty;
    for (int b = 0; b <= 100; ++b) {
      if (!bins[b].empty()) non_empty.push_back(b);
    }
    const int bin = non_empty[uniform_index(rng, non_empty.size())];
    int seed_id = bins[bin].front();
    double best = -1;
    for (int id : bins[bin]) {
      tree.add_distance_computations(1);
      const double d = metric.distance(q_rand, tree.node(id).q);
      if (best < 0 || d < best) {
        best = d;
        seed_id = id;
      }
    }

    const NikSolver::Seed seed = solver.prepare_seed(tree.node(seed_id).q);
    const PerturbationResult res = solver.perturb(seed, cfg.sigma, cfg.dcc_rounds, rng);

    AttemptRecord rec;
    rec.attempt = iter + 1;
    rec.seed_id = seed_id;
    rec.dcc_rounds_used = res.iterations_used;

    if (res.status == NikStatus::degenerate) {
      rec.outcome = AttemptOutcome::degenerate;
      rec.distance_to_init = metric.distance(seed.q, tree.node(0).q);
    } else if (res.status == NikStatus::clash_unresolved ||
               res.violation_max > solver.config().feasibility_tol) {
      rec.outcome = AttemptOutcome::clash_rejected;
      rec.distance_to_init = metric.distance(res.q_new, tree.node(0).q);
    } else {
      tree.add_distance_computations(1);
      const double d0 = metric.distance(res.q_new, tree.node(0).q);
      rec.distance_to_init = d0;
      // Bin index floor(d*100/R); distance exactly R lands in bin 100, the
      // clamp only absorbs roundoff there. Beyond R the sample leaves the
      // exploration region and is rejected.
      if (d0 > R) {
        rec.outcome = AttemptOutcome::disk_rejected;
      } else {
        const int b_new = std::min(static_cast<int>(std::floor(d0 * 100.0 / R)), 100);
        rec.outcome = AttemptOutcome::accepted;
        rec.node_id = tree.insert(res.q_new, seed_id);
        bins[b_new].push_back(rec.node_id);
      }
    }

    tally(run.stats, rec.outcome);
    rec.distance_computations_cumulative = tree.distance_computations();
    if (on_attempt) on_attempt(rec);
  }

  run.wall_seconds = timer.seconds();
  return run;
}

PlannerRun mcl_walk(const NikSolver& solver, const Eigen::VectorXd& q_init,
                    const PlannerConfig& cfg, const AttemptCallback& on_attempt) {
  validate_common(cfg);
  if (!(cfg.sigma > 0)) throw ModelError("step length must be positive");
  if (cfg.iterations < 1) throw ModelError("iteration budget must be positive");

  Timer timer;
  const Metric& metric = solver.metric();
  solver.prepare_seed(q_init);

  PlannerRun run{ExplorationTree(metric, q_init)};
  ExplorationTree& tree = run.tree;
  int current = 0;

  for (int iter = 0; iter < cfg.iterations && tree.size() < cfg.max_samples; ++iter) {
    Rng rng = make_substream(cfg.rng_seed, kIterStream, static_cast<std::uint64_t>(iter));
    const NikSolver::Seed seed = solver.prepare_seed(tree.node(current).q);
    const PerturbationResult res = solver.perturb(seed, cfg.sigma, cfg.dcc_rounds, rng);

    AttemptRecord rec;
    rec.attempt = iter + 1;
    rec.seed_id = current;
    rec.dcc_rounds_used = res.iterations_used;

    switch (res.status) {
      case NikStatus::degenerate:
        rec.outcome = AttemptOutcome::degenerate;
        rec.distance_to_init = metric.distance(seed.q, tree.node(0).q);
        break;
      case NikStatus::clash_unresolved:
        rec.outcome = AttemptOutcome::clash_rejected;
        rec.distance_to_init = metric.distance(res.q_new, tree.node(0).q);
        break;
      case NikStatus::accepted:
        rec.distance_to_init = metric.distance(res.q_new, tree.node(0).q);
        if (res.violation_max > solver.config().feasibility_tol) {
          rec.outcome = AttemptOutcome::clash_rejected;
        } else {
          rec.outcome = AttemptOutcome::accepted;
          rec.node_id = tree.insert(res.q_new, current);
          current = rec.node_id;
        }
        break;
    }

    tally(run.stats, rec.outcome);
    rec.distance_computations_cumulative = tree.distance_computations();
    if (on_attempt) on_attempt(rec);
  }

  run.wall_seconds = timer.seconds();
  return run;
}

PlannerRun plan(const NikSolver& solver, const Eigen::VectorXd& q_init, const PlannerConfig& cfg,
                const AttemptCallback& on_attempt) {
  switch (cfg.mode) {
    case PlannerMode::poisson: return poisson_explore(solver, q_init, cfg, on_attempt);
    case PlannerMode::binned_rrt: return binned_rrt(solver, q_init, cfg, on_attempt);
    case PlannerMode::mcl: return mcl_walk(solver, q_init, cfg, on_attempt);
  }
  throw ModelError("unknown planner mode");
}

}  // namespace kinex
