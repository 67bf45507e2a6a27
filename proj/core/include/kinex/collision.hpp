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

#ifndef KINEX_COLLISION_HPP_
#define KINEX_COLLISION_HPP_

#include <array>
#include <functional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kinex/geometry.hpp"
#include "kinex/linkage.hpp"

namespace kinex {

// Uniform grid hashing each point into the cell floor(position / cell_size).
class SpatialHashGrid {
 public:
  SpatialHashGrid(const std::vector<Vec3>& positions, double cell_size);

  double cell_size() const { return cell_size_; }
  static std::array<long long, 3> cell_of(const Vec3& p, double cell_size);

  // Point indices stored in one cell, or nullptr when the cell is empty.
  const std::vector<int>* cell(long long cx, long long cy, long long cz) const;

 private:
  double cell_size_;
  std::unordered_map<long long, std::vector<int>> cells_;
};

struct ClashPair {
  int atom_i = -1;  // smaller id
  int atom_j = -1;
  double overlap = 0;  // scale*(r_i + r_j) - distance, positive
};

struct ClashReport {
  std::vector<ClashPair> pairs;  // sorted by descending overlap
  bool clash_free = true;
};

// One sphere participating in clash checks: a linkage atom or a static
// obstacle.
struct CollisionSphere {
  int id = -1;
  Vec3 position = Vec3::Zero();
  double radius = 0;
};

// Grid-accelerated clash scan. Spheres i, j clash when their distance drops
// below scale*(r_i + r_j) and exclude(i, j) is false (by index). The neighbor
// shell is ceil(scale * 2 * r_max / cell_size) cells, which is exactly wide
// enough for the largest possible clashing pair. distance_evals, when
// non-null, accumulates the number of pair distances computed.
ClashReport find_clashes(const SpatialHashGrid& grid, const std::vector<CollisionSphere>& spheres,
                         double scale, const std::function<bool(int, int)>& exclude,
                         long long* distance_evals = nullptr);

struct CollisionConfig {
  double scale = 0.75;
  double cell_size = 1.0;
  int exclusion_depth = 3;
};

struct Obstacle {
  Vec3 position = Vec3::Zero();
  double radius = 0;
};

// Clash model for one linkage plus a static obstacle field. Obstacles get
// ids just past the largest atom id and never move; obstacle-obstacle pairs
// are excluded, as are atom pairs within exclusion_depth bonds or inside one
// rigid body.
class CollisionModel {
 public:
  CollisionModel(const KinematicLinkage& linkage, std::vector<Obstacle> obstacles,
                 CollisionConfig config = {});

  // positions indexed like linkage.atoms().
  ClashReport find_clashes(const std::vector<Vec3>& positions,
                           long long* distance_evals = nullptr) const;

  bool is_obstacle_id(int id) const { return id >= obstacle_base_id_; }
  int obstacle_base_id() const { return obstacle_base_id_; }
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }
  const CollisionConfig& config() const { return config_; }
  const KinematicLinkage& linkage() const { return *linkage_; }

 private:
  const KinematicLinkage* linkage_;
  std::vector<Obstacle> obstacles_;
  CollisionConfig config_;
  int obstacle_base_id_ = 0;
  std::vector<CollisionSphere> spheres_;  // atoms first, then obstacles
  std::unordered_set<long long> excluded_pairs_;
  std::vector<int> body_of_index_;  // -1 for obstacles
};

}  // namespace kinex

#endif  // KINEX_COLLISION_HPP_
