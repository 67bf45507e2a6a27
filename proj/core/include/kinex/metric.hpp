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

#ifndef KINEX_METRIC_HPP_
#define KINEX_METRIC_HPP_

#include <Eigen/Core>

#include "kinex/linkage.hpp"
#include "kinex/rng.hpp"

namespace kinex {

// Weights of the conformation-space metric. Global rigid-body DOFs are
// excluded by default: whole-body drift is not conformational novelty and
// Angstroms do not mix with radians.
struct MetricConfig {
  double revolute_weight = 1.0;
  double global_translation_weight = 0.0;
  double global_rotation_weight = 0.0;
  bool wrap = true;
};

// Weighted L2 metric on the DOF torus. Revolute coordinate differences are
// wrapped into (-pi, pi] before squaring, which makes this a true metric on
// the product of circles and lines.
class Metric {
 public:
  Metric(const KinematicLinkage& linkage, MetricConfig config = {});

  double distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  // Per-DOF difference a - b, wrapped for revolute DOFs.
  Eigen::VectorXd difference(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  // Weighted norm sqrt(sum_d w_d v_d^2) of a tangent vector (no wrapping).
  double norm(const Eigen::VectorXd& v) const;

  // Uniform direction on the unit sphere of the weighted metric, supported
  // on the DOFs with positive weight. Returns zero if no DOF participates.
  Eigen::VectorXd random_direction(Rng& rng) const;

  const Eigen::VectorXd& weights() const { return weights_; }
  const MetricConfig& config() const { return config_; }

 private:
  MetricConfig config_;
  Eigen::VectorXd weights_;
  std::vector<bool> revolute_;
};

}  // namespace kinex

#endif  // KINEX_METRIC_HPP_
