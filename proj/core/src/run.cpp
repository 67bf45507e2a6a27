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

#include "kinex/run.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kinex/analysis.hpp"
#include "kinex/constraint_file.hpp"
#include "kinex/elements.hpp"
#include "kinex/error.hpp"
#include "kinex/linkage_file.hpp"
#include "kinex/pdb.hpp"

namespace kinex {
namespace {

using nlohmann::json;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string resolve_kind(const RunConfig& cfg) {
  if (cfg.input_kind == "pdb" || cfg.input_kind == "lnk") return cfg.input_kind;
  if (cfg.input_kind != "auto")
    throw ParseError("unknown input kind '" + cfg.input_kind + "' (expected auto, pdb, or lnk)");
  const std::string low = lower(cfg.input_path);
  if (low.size() >= 4 && low.compare(low.size() - 4, 4, ".pdb") == 0) return "pdb";
  if (low.size() >= 4 && low.compare(low.size() - 4, 4, ".lnk") == 0) return "lnk";
  throw ParseError("cannot infer input kind from '" + cfg.input_path +
                   "'; pass an explicit kind");
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json planner_json(const PlannerConfig& p) {
  return json{{"mode", to_string(p.mode)},
              {"r", p.r},
              {"attempts_per_seed", p.attempts_per_seed},
              {"exploration_radius", p.exploration_radius},
              {"sigma", p.sigma},
              {"iterations", p.iterations},
              {"dcc_rounds", p.dcc_rounds},
              {"max_samples", p.max_samples},
              {"rng_seed", p.rng_seed},
              {"neighbor_search", to_string(p.neighbor_search)},
              {"parallel", p.parallel}};
}

PlannerConfig planner_from_json(const json& j) {
  PlannerConfig p;
  p.mode = planner_mode_from_string(j.at("mode").get<std::string>());
  p.r = j.at("r").get<double>();
  p.attempts_per_seed = j.at("attempts_per_seed").get<int>();
  p.exploration_radius = j.at("exploration_radius").get<double>();
  p.sigma = j.at("sigma").get<double>();
  p.iterations = j.at("iterations").get<int>();
  p.dcc_rounds = j.at("dcc_rounds").get<int>();
  p.max_samples = j.at("max_samples").get<int>();
  p.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  p.neighbor_search = neighbor_search_from_string(j.at("neighbor_search").get<std::string>());
  p.parallel = j.at("parallel").get<bool>();
  return p;
}

}  // namespace

std::string to_string(PlannerMode m) {
  switch (m) {
    case PlannerMode::poisson: return "poisson";
    case PlannerMode::binned_rrt: return "rrt";
    case PlannerMode::mcl: return "mcl";
  }
  return "poisson";
}

PlannerMode planner_mode_from_string(const std::string& s) {
  if (s == "poisson") return PlannerMode::poisson;
  if (s == "rrt") return PlannerMode::binned_rrt;
  if (s == "mcl") return PlannerMode::mcl;
  throw ParseError("unknown planner '" + s + "' (expected poisson, rrt, or mcl)");
}

std::string to_string(NeighborSearch n) {
  return n == NeighborSearch::bvh ? "bvh" : "linear";
}

NeighborSearch neighbor_search_from_string(const std::string& s) {
  if (s == "bvh") return NeighborSearch::bvh;
  if (s == "linear") return NeighborSearch::linear;
  throw ParseError("unknown neighbor search '" + s + "' (expected bvh or linear)");
}

std::string manifest_json(const RunConfig& cfg) {
  json j;
  j["input_path"] = cfg.input_path;
  j["input_kind"] = cfg.input_kind;
  j["chains"] = cfg.chains;
  j["constraints_path"] = cfg.constraints_path;
  j["radii_path"] = cfg.radii_path;
  j["output_dir"] = cfg.output_dir;
  j["write_ensemble"] = cfg.write_ensemble;
  j["planner"] = planner_json(cfg.planner);
  j["metric"] = json{{"revolute_weight", cfg.metric.revolute_weight},
                     {"global_translation_weight", cfg.metric.global_translation_weight},
                     {"global_rotation_weight", cfg.metric.global_rotation_weight},
                     {"wrap", cfg.metric.wrap}};
  j["collision"] = json{{"scale", cfg.collision.scale},
                        {"cell_size", cfg.collision.cell_size},
                        {"exclusion_depth", cfg.collision.exclusion_depth}};
  j["hbond"] = json{{"max_ha_distance", cfg.hbond.max_ha_distance},
                    {"min_dha_angle_deg", cfg.hbond.min_dha_angle_deg}};
  j["nik"] = json{{"clash_pair_cap", cfg.nik.clash_pair_cap},
                  {"degenerate_tol", cfg.nik.degenerate_tol},
                  {"feasibility_tol", cfg.nik.feasibility_tol}};
  return j.dump(2) + "\n";
}

RunConfig config_from_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path + "'");
  RunConfig cfg;
  try {
    const json j = json::parse(in);
    cfg.input_path = j.at("input_path").get<std::string>();
    cfg.input_kind = j.at("input_kind").get<std::string>();
    cfg.chains = j.at("chains").get<std::string>();
    cfg.constraints_path = j.at("constraints_path").get<std::string>();
    cfg.radii_path = j.at("radii_path").get<std::string>();
    cfg.output_dir = j.at("output_dir").get<std::string>();
    cfg.write_ensemble = j.at("write_ensemble").get<bool>();
    cfg.planner = planner_from_json(j.at("planner"));
    const json& m = j.at("metric");
    cfg.metric.revolute_weight = m.at("revolute_weight").get<double>();
    cfg.metric.global_translation_weight = m.at("global_translation_weight").get<double>();
    cfg.metric.global_rotation_weight = m.at("global_rotation_weight").get<double>();
    cfg.metric.wrap = m.at("wrap").get<bool>();
    const json& c = j.at("collision");
    cfg.collision.scale = c.at("scale").get<double>();
    cfg.collision.cell_size = c.at("cell_size").get<double>();
    cfg.collision.exclusion_depth = c.at("exclusion_depth").get<int>();
    const json& h = j.at("hbond");
    cfg.hbond.max_ha_distance = h.at("max_ha_distance").get<double>();
    cfg.hbond.min_dha_angle_deg = h.at("min_dha_angle_deg").get<double>();
    const json& n = j.at("nik");
    cfg.nik.clash_pair_cap = n.at("clash_pair_cap").get<int>();
    cfg.nik.degenerate_tol = n.at("degenerate_tol").get<double>();
    cfg.nik.feasibility_tol = n.at("feasibility_tol").get<double>();
  } catch (const json::exception& e) {
    throw ParseError("manifest '" + path + "': " + e.what());
  }
  return cfg;
}

RunOutput run(const RunConfig& config) {
  namespace fs = std::filesystem;

  RunConfig cfg = config;
  cfg.input_kind = resolve_kind(cfg);

  RadiiTable radii = RadiiTable::standard();
  if (!cfg.radii_path.empty()) radii.load_overrides(cfg.radii_path);

  std::vector<Atom> atoms;
  std::optional<std::vector<BondSpec>> bonds;
  std::vector<std::pair<int, int>> explicit_pairs;
  std::vector<Obstacle> obstacles;

  if (cfg.input_kind == "pdb") {
    PdbParseOptions opt;
    if (!cfg.chains.empty()) {
      std::set<char> keep(cfg.chains.begin(), cfg.chains.end());
      opt.chains = std::move(keep);
    }
    atoms = parse_pdb(cfg.input_path, opt, radii);
  } else {
    LinkageInput input = parse_linkage_file(cfg.input_path, radii);
    atoms = std::move(input.atoms);
    bonds = std::move(input.bonds);
    explicit_pairs = std::move(input.constraint_pairs);
    obstacles = std::move(input.obstacles);
  }
  if (!cfg.constraints_path.empty()) {
    auto more = parse_constraint_file(cfg.constraints_path, atoms);
    explicit_pairs.insert(explicit_pairs.end(), more.begin(), more.end());
  }

  const KinematicLinkage linkage = build_linkage(atoms, bonds);
  const Metric metric(linkage, cfg.metric);
  const CollisionModel collision(linkage, std::move(obstacles), cfg.collision);

  const Eigen::VectorXd q_init = linkage.zero_conformation();
  const FkResult fk0 = linkage.forward_kinematics(q_init);
  std::vector<HolonomicConstraint> constraints =
      gather_constraints(linkage, fk0, cfg.hbond, explicit_pairs);
  const int holonomic_count = static_cast<int>(constraints.size());
  const NikSolver solver(linkage, metric, collision, std::move(constraints), fk0, cfg.nik);

  fs::create_directories(cfg.output_dir);
  const std::string stats_path = (fs::path(cfg.output_dir) / "stats.csv").string();
  std::ofstream stats(stats_path);
  if (!stats) throw IoError("cannot write '" + stats_path + "'");
  stats << "attempt,seed_id,outcome,distance_to_init,"
           "distance_computations_cumulative,dcc_rounds\n";
  const AttemptCallback on_attempt = [&stats](const AttemptRecord& rec) {
    stats << rec.attempt << ',' << rec.seed_id << ',' << to_string(rec.outcome) << ','
          << g17(rec.distance_to_init) << ',' << rec.distance_computations_cumulative << ','
          << rec.dcc_rounds_used << '\n';
  };

  PlannerRun pr = plan(solver, q_init, cfg.planner, on_attempt);
  stats.close();
  if (!stats) throw IoError("failed writing '" + stats_path + "'");

  RunOutput out;
  out.stats = pr.stats;
  out.tree_size = pr.tree.size();
  out.dof_count = linkage.dof_count();
  out.atom_count = static_cast<int>(atoms.size());
  out.holonomic_constraints = holonomic_count;
  out.distance_computations = pr.tree.distance_computations();
  out.wall_seconds = pr.wall_seconds;
  out.stats_path = stats_path;

  out.tree_path = (fs::path(cfg.output_dir) / "tree.txt").string();
  {
    std::ofstream tree_out(out.tree_path);
    if (!tree_out) throw IoError("cannot write '" + out.tree_path + "'");
    pr.tree.serialize(tree_out);
  }

  out.rejection_path = (fs::path(cfg.output_dir) / "rejection.csv").string();
  {
    const EnsembleStats table = rejection_table({{to_string(cfg.planner.mode), pr.stats}});
    std::ofstream rej(out.rejection_path);
    if (!rej) throw IoError("cannot write '" + out.rejection_path + "'");
    rej << rejection_csv(table);
  }

  if (cfg.write_ensemble) {
    out.ensemble_dir = (fs::path(cfg.output_dir) / "ensemble").string();
    fs::create_directories(out.ensemble_dir);
    const std::string ext = cfg.input_kind == "pdb" ? ".pdb" : ".lnk";
    for (const BvhNode& node : pr.tree.nodes()) {
      const FkResult fk = linkage.forward_kinematics(node.q);
      char name[32];
      std::snprintf(name, sizeof(name), "conf_%06d", node.id);
      const std::string path = (fs::path(out.ensemble_dir) / (name + ext)).string();
      if (cfg.input_kind == "pdb") {
        write_pdb(path, linkage.atoms(), fk.positions);
      } else {
        write_linkage_file(path, linkage.atoms(), fk.positions, linkage.graph().bonds(),
                           explicit_pairs, collision.obstacles());
      }
    }
  }

  out.manifest_path = (fs::path(cfg.output_dir) / "manifest.json").string();
  {
    std::ofstream man(out.manifest_path);
    if (!man) throw IoError("cannot write '" + out.manifest_path + "'");
    man << manifest_json(cfg);
  }
  return out;
}

}  // namespace kinex
