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

#include "kinex/collision.hpp"

#include <algorithm>
#include <cmath>

#include "kinex/error.hpp"

namespace kinex {
namespace {

long long pack_cell(long long cx, long long cy, long long cz) {
  return ((cx & 0x1fffffLL) << 42) | ((cy & 0x1fffffLL) << 21) | (cz & 0x1fffffLL);
}

long long pair_key(int i, int j) {
  if (i > j) std::swap(i, j);
  return (static_cast<long long>(i) << 32) | static_cast<unsigned int>(j);
}

}  // namespace

SpatialHashGrid::SpatialHashGrid(const std::vector<Vec3>& positions, double cell_size)
    : cell_size_(cell_size) {
  if (!(cell_size > 0)) throw ModelError("grid cell size must be positive");
  cells_.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto c = cell_of(positions[i], cell_size_);
    cells_[pack_cell(c[0], c[1], c[2])].push_back(static_cast<int>(i));
  }
}

std::array<long long, 3> SpatialHashGrid::cell_of(const Vec3& p, double cell_size) {
  return {static_cast<long long>(std::floor(p.x() / cell_size)),
          static_cast<long long>(std::floor(p.y() / cell_size)),
          static_cast<long long>(std::floor(p.z() / cell_size))};
}

const std::vector<int>* SpatialHashGrid::cell(long long cx, long long cy, long long cz) const {
  auto it = cells_.find(pack_cell(cx, cy, cz));
  return it == cells_.end() ? nullptr : &it->second;
}

ClashReport find_clashes(const SpatialHashGrid& grid, const std::vector<CollisionSphere>& spheres,
                         double scale, const std::function<bool(int, int)>& exclude,
                         long long* distance_evals) {
  double r_max = 0;
  for (const auto& s : spheres) r_max = std::max(r_max, s.radius);
  const int shell =
      static_cast<int>(std::ceil(scale * 2.0 * r_max / grid.cell_size()));

  ClashReport report;
  long long evals = 0;
  for (std::size_t i = 0; i < spheres.size(); ++i) {
    const auto& a = spheres[i];
    const auto c = SpatialHashGrid::cell_of(a.position, grid.cell_size());
    for (long long dx = -shell; dx <= shell; ++dx)
      for (long long dy = -shell; dy <= shell; ++dy)
        for (long long dz = -shell; dz <= shell; ++dz) {
          const std::vector<int>* bucket = grid.cell(c[0] + dx, c[1] + dy, c[2] + dz);
          if (!bucket) continue;
          for (int j : *bucket) {
            if (j <= static_cast<int>(i)) continue;
            if (exclude && exclude(static_cast<int>(i), j)) continue;
            const auto& b = spheres[j];
            ++evals;
            const double threshold = scale * (a.radius + b.radius);
            const double dist = (a.position - b.position).norm();
            if (dist < threshold) {
              ClashPair p;
              p.atom_i = std::min(a.id, b.id);
              p.atom_j = std::max(a.id, b.id);
              p.overlap = threshold - dist;
              report.pairs.push_back(p);
            }
          }
        }
  }
  std::sort(report.pairs.begin(), report.pairs.end(), [](const ClashPair& a, const ClashPair& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    return std::make_pair(a.atom_i, a.atom_j) < std::make_pair(b.atom_i, b.atom_j);
  });
  report.clash_free = report.pairs.empty();
  if (distance_evals) *distance_evals += evals;
  return report;
}

CollisionModel::CollisionModel(const KinematicLinkage& linkage, std::vector<Obstacle> obstacles,
                               CollisionConfig config)
    : linkage_(&linkage), obstacles_(std::move(obstacles)), config_(config) {
  if (!(config_.scale > 0)) throw ModelError("collision scale must be positive");
  if (!(config_.cell_size > 0)) throw ModelError("collision cell size must be positive");
  if (config_.exclusion_depth < 0) throw ModelError("exclusion depth must be non-negative");

  int max_id = 0;
  for (const Atom& a : linkage.atoms()) max_id = std::max(max_id, a.id);
  obstacle_base_id_ = max_id + 1;

  spheres_.reserve(linkage.atoms().size() + obstacles_.size());
  body_of_index_.reserve(spheres_.capacity());
  for (const Atom& a : linkage.atoms()) {
    spheres_.push_back({a.id, a.position, a.vdw_radius});
    body_of_index_.push_back(linkage.body_of(a.id));
  }
  for (std::size_t k = 0; k < obstacles_.size(); ++k) {
    spheres_.push_back(
        {obstacle_base_id_ + static_cast<int>(k), obstacles_[k].position, obstacles_[k].radius});
    body_of_index_.push_back(-1);
  }

  for (const auto& [i, j] : linkage.graph().pairs_within(config_.exclusion_depth)) {
    excluded_pairs_.insert(pair_key(linkage.atom_index(i), linkage.atom_index(j)));
  }
}

ClashReport CollisionModel::find_clashes(const std::vector<Vec3>& positions,
                                         long long* distance_evals) const {
  if (positions.size() != linkage_->atoms().size()) {
    throw ModelError("position array does not match the linkage's atom count");
  }
  std::vector<CollisionSphere> spheres = spheres_;
  std::vector<Vec3> points;
  points.reserve(spheres.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    spheres[i].position = positions[i];
    points.push_back(positions[i]);
  }
  for (std::size_t k = positions.size(); k < spheres.size(); ++k) {
    points.push_back(spheres[k].position);
  }

  const int n_atoms = static_cast<int>(positions.size());
  auto exclude = [&](int i, int j) {
    const bool obs_i = i >= n_atoms;
    const bool obs_j = j >= n_atoms;
    if (obs_i && obs_j) return true;
    if (obs_i || obs_j) return false;
    if (body_of_index_[i] == body_of_index_[j]) return true;
    return excluded_pairs_.count(pair_key(i, j)) > 0;
  };

  SpatialHashGrid grid(points, config_.cell_size);
  return kinex::find_clashes(grid, spheres, config_.scale, exclude, distance_evals);
}

}  // namespace kinex
