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

#include "kinex/metric.hpp"

#include <cmath>

#include "kinex/error.hpp"
#include "kinex/geometry.hpp"

namespace kinex {

Metric::Metric(const KinematicLinkage& linkage, MetricConfig config) : config_(config) {
  if (config.revolute_weight < 0 || config.global_translation_weight < 0 ||
      config.global_rotation_weight < 0) {
    throw ModelError("metric weights must be non-negative");
  }
  const int n = linkage.dof_count();
  weights_.resize(n);
  revolute_.resize(n, false);
  for (int k = 0; k < n; ++k) {
    switch (linkage.dof_infos()[k].kind) {
      case DofKind::revolute:
        weights_[k] = config.revolute_weight;
        revolute_[k] = true;
        break;
      case DofKind::global_translation:
        weights_[k] = config.global_translation_weight;
        break;
      case DofKind::global_rotation:
        weights_[k] = config.global_rotation_weight;
        break;
    }
  }
}

Eigen::VectorXd Metric::difference(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  if (a.size() != weights_.size() || b.size() != weights_.size()) {
    throw ModelError("conformation length does not match the metric's DOF count");
  }
  Eigen::VectorXd d = a - b;
  if (config_.wrap) {
    for (int k = 0; k < d.size(); ++k) {
      if (revolute_[k]) d[k] = wrapped_diff(a[k], b[k]);
    }
  }
  return d;
}

double Metric::norm(const Eigen::VectorXd& v) const {
  double s = 0;
  for (int k = 0; k < v.size(); ++k) s += weights_[k] * v[k] * v[k];
  return std::sqrt(s);
}

double Metric::distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  return norm(difference(a, b));
}

Eigen::VectorXd Metric::random_direction(Rng& rng) const {
  Eigen::VectorXd dir = Eigen::VectorXd::Zero(weights_.size());
  NormalSampler normal;
  while (true) {
    double sumsq = 0;
    bool any = false;
    for (int k = 0; k < weights_.size(); ++k) {
      if (weights_[k] <= 0) continue;
      any = true;
      const double g = normal(rng);
      dir[k] = g / std::sqrt(weights_[k]);
      sumsq += g * g;
    }
    if (!any) return dir;
    if (sumsq > 1e-30) {
      dir /= std::sqrt(sumsq);
      return dir;
    }
  }
}

}  // namespace kinex
