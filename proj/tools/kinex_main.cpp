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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kinex/analysis.hpp"
#include "kinex/error.hpp"
#include "kinex/linkage_file.hpp"
#include "kinex/pdb.hpp"
#include "kinex/run.hpp"

namespace {

int do_run(kinex::RunConfig cfg) {
  const kinex::RunOutput out = kinex::run(cfg);
  const auto& s = out.stats;
  std::printf("model: %d atoms, %d DOF, %d holonomic constraints\n", out.atom_count,
              out.dof_count, out.holonomic_constraints);
  std::printf("attempts %lld: accepted %lld, clash_rejected %lld, disk_rejected %lld, "
              "degenerate %lld\n",
              s.attempts, s.accepted, s.clash_rejected, s.disk_rejected, s.degenerate);
  std::printf("ensemble size %d, distance computations %lld, wall %.2f s\n", out.tree_size,
              out.distance_computations, out.wall_seconds);
  std::printf("outputs in %s\n", out.manifest_path.substr(0, out.manifest_path.rfind('/')).c_str());
  return 0;
}

struct Ensemble {
  std::vector<kinex::Atom> atoms;                 // from the first frame
  std::vector<std::vector<kinex::Vec3>> frames;   // [frame][atom index]
};

Ensemble load_ensemble(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext == ".pdb" || ext == ".lnk") files.push_back(entry.path());
  }
  if (files.empty()) throw kinex::IoError("no .pdb or .lnk files in '" + dir + "'");
  std::sort(files.begin(), files.end());

  Ensemble e;
  for (const fs::path& f : files) {
    std::vector<kinex::Atom> atoms;
    if (f.extension() == ".pdb") {
      atoms = kinex::parse_pdb(f.string());
    } else {
      atoms = kinex::parse_linkage_file(f.string()).atoms;
    }
    if (e.frames.empty()) {
      e.atoms = atoms;
    } else if (atoms.size() != e.atoms.size()) {
      throw kinex::ParseError("'" + f.string() + "' has a different atom count than the first "
                              "ensemble member");
    }
    std::vector<kinex::Vec3> frame;
    frame.reserve(atoms.size());
    for (const auto& a : atoms) frame.push_back(a.position);
    e.frames.push_back(std::move(frame));
  }
  return e;
}

int do_analyze(const std::string& ensemble_dir, const std::string& out_dir,
               std::vector<int> selection, bool superpose) {
  namespace fs = std::filesystem;
  const Ensemble e = load_ensemble(ensemble_dir);

  if (selection.empty()) {
    for (const auto& a : e.atoms) selection.push_back(a.id);
  }
  std::vector<int> index_of_id(selection.size(), -1);
  for (std::size_t s = 0; s < selection.size(); ++s) {
    for (std::size_t i = 0; i < e.atoms.size(); ++i) {
      if (e.atoms[i].id == selection[s]) {
        index_of_id[s] = static_cast<int>(i);
        break;
      }
    }
    if (index_of_id[s] < 0) {
      throw kinex::ModelError("selected atom id " + std::to_string(selection[s]) +
                              " not present in the ensemble");
    }
  }

  std::vector<std::vector<kinex::Vec3>> sel_frames(e.frames.size());
  for (std::size_t f = 0; f < e.frames.size(); ++f) {
    sel_frames[f].reserve(selection.size());
    for (int idx : index_of_id) sel_frames[f].push_back(e.frames[f][idx]);
  }

  fs::create_directories(out_dir);
  const kinex::CorrelationMatrix c = kinex::correlation_matrix(sel_frames, selection);
  const std::string corr_path = (fs::path(out_dir) / "correlation.csv").string();
  {
    std::ofstream out(corr_path);
    if (!out) throw kinex::IoError("cannot write '" + corr_path + "'");
    out << kinex::correlation_csv(c);
  }

  const std::string rmsd_path = (fs::path(out_dir) / "rmsd.csv").string();
  {
    std::ofstream out(rmsd_path);
    if (!out) throw kinex::IoError("cannot write '" + rmsd_path + "'");
    out << "frame,rmsd\n";
    char buf[64];
    for (std::size_t f = 0; f < sel_frames.size(); ++f) {
      std::snprintf(buf, sizeof(buf), "%zu,%.6f\n", f,
                    kinex::rmsd(sel_frames[0], sel_frames[f], superpose));
      out << buf;
    }
  }
  std::printf("analyzed %zu frames, %zu atoms\n", e.frames.size(), selection.size());
  std::printf("wrote %s and %s\n", corr_path.c_str(), rmsd_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinex: collision-free constrained sampling of kinematic linkages"};
  app.require_subcommand(1);

  kinex::RunConfig cfg;
  std::string from_manifest;
  bool no_dcc = false;
  bool no_ensemble = false;

  CLI::App* run_cmd = app.add_subcommand("run", "Sample a conformational ensemble");
  run_cmd->add_option("input", cfg.input_path, "Input structure (.pdb or .lnk)");
  run_cmd->add_option("--from-manifest", from_manifest,
                      "Repeat a previous run from its manifest.json")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--input-kind", cfg.input_kind, "Input format")
      ->check(CLI::IsMember({"auto", "pdb", "lnk"}));
  run_cmd->add_option("--chain", cfg.chains, "PDB chain filter, e.g. A or AB");
  run_cmd->add_option("--constraints", cfg.constraints_path, "Explicit HBOND constraint file")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--radii", cfg.radii_path, "Element radii override file")
      ->check(CLI::ExistingFile);
  auto* out_opt = run_cmd->add_option("-o,--output", cfg.output_dir, "Output directory");
  run_cmd->add_flag("--no-ensemble", no_ensemble, "Skip writing per-conformation files");

  run_cmd->add_option("--planner", cfg.planner.mode, "Planner")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, kinex::PlannerMode>{{"poisson", kinex::PlannerMode::poisson},
                                                    {"rrt", kinex::PlannerMode::binned_rrt},
                                                    {"mcl", kinex::PlannerMode::mcl}}));
  run_cmd->add_option("--neighbor-search", cfg.planner.neighbor_search, "Neighbor search")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, kinex::NeighborSearch>{{"bvh", kinex::NeighborSearch::bvh},
                                                       {"linear", kinex::NeighborSearch::linear}}));
  run_cmd->add_option("--radius", cfg.planner.r, "Poisson disk radius r");
  run_cmd->add_option("--attempts", cfg.planner.attempts_per_seed,
                      "Perturbation attempts per seed (P)");
  run_cmd->add_option("--sigma", cfg.planner.sigma, "Step length for rrt and mcl");
  run_cmd->add_option("--exploration-radius", cfg.planner.exploration_radius,
                      "Exploration radius R (rrt)");
  run_cmd->add_option("--iterations", cfg.planner.iterations, "Iterations (rrt, mcl)");
  run_cmd->add_option("--dcc-rounds", cfg.planner.dcc_rounds,
                      "Clash-avoiding constraint rounds (k)");
  run_cmd->add_flag("--no-dcc", no_dcc, "Disable clash-avoiding constraints (k = 0)");
  run_cmd->add_option("--max-samples", cfg.planner.max_samples, "Stop after this many samples");
  run_cmd->add_option("--seed", cfg.planner.rng_seed, "RNG seed");
  run_cmd->add_flag("--parallel", cfg.planner.parallel,
                    "Evaluate one seed's attempts concurrently");

  run_cmd->add_option("--collision-scale", cfg.collision.scale, "Radius scale for clashes");
  run_cmd->add_option("--cell-size", cfg.collision.cell_size, "Spatial hash cell size");
  run_cmd->add_option("--exclusion-depth", cfg.collision.exclusion_depth,
                      "Bond distance excluded from clash checks");
  run_cmd->add_option("--hbond-distance", cfg.hbond.max_ha_distance,
                      "Max H...acceptor distance for detection");
  run_cmd->add_option("--hbond-angle", cfg.hbond.min_dha_angle_deg,
                      "Min donor-H-acceptor angle for detection");

  std::string ensemble_dir;
  std::string analyze_out;
  std::vector<int> selection;
  bool no_superpose = false;
  CLI::App* an_cmd = app.add_subcommand("analyze", "Correlation and RMSD over an ensemble");
  an_cmd->add_option("ensemble", ensemble_dir, "Directory of .pdb or .lnk conformations")
      ->required()
      ->check(CLI::ExistingDirectory);
  an_cmd->add_option("-o,--output", analyze_out, "Output directory (default: the ensemble dir)");
  an_cmd->add_option("--atoms", selection, "Atom ids to analyze (default: all)");
  an_cmd->add_flag("--no-superpose", no_superpose, "Skip rigid superposition before RMSD");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (!from_manifest.empty()) {
        kinex::RunConfig loaded = kinex::config_from_manifest(from_manifest);
        if (out_opt->count() > 0) loaded.output_dir = cfg.output_dir;
        return do_run(std::move(loaded));
      }
      if (cfg.input_path.empty()) {
        std::cerr << "kinex: error: an input file or --from-manifest is required\n";
        return 1;
      }
      if (no_dcc) cfg.planner.dcc_rounds = 0;
      cfg.write_ensemble = !no_ensemble;
      return do_run(std::move(cfg));
    }
    return do_analyze(ensemble_dir, analyze_out.empty() ? ensemble_dir : analyze_out, selection,
                      !no_superpose);
  } catch (const std::exception& e) {
    std::cerr << "kinex: error: " << e.what() << "\n";
    return 1;
  }
}
