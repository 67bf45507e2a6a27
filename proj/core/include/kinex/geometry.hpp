//
// Copyright 2026 the kinex authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <utility>

namespace kinex {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

// Smallest absolute angular difference a - b on the circle. The magnitude is
// what matters for metric use; the representative lies in [-pi, pi].
inline double wrapped_diff(double a, double b) {
  return std::remainder(a - b, 2.0 * std::numbers::pi);
}

// Deterministic orthonormal completion of a unit axis: eliminate the axis
// component from the coordinate direction the axis leans on least.
inline std::pair<Vec3, Vec3> orthonormal_complement(const Vec3& axis) {
  int k = 0;
  if (std::abs(axis.y()) < std::abs(axis[k])) k = 1;
  if (std::abs(axis.z()) < std::abs(axis[k])) k = 2;
  Vec3 e = Vec3::Zero();
  e[k] = 1.0;
  const Vec3 u1 = (e - e.dot(axis) * axis).normalized();
  const Vec3 u2 = axis.cross(u1);
  return {u1, u2};
}

// Rotation vector (axis * angle) of a rotation matrix.
inline Vec3 rotation_vector(const Mat3& r) {
  const Eigen::AngleAxisd aa(r);
  return aa.angle() * aa.axis();
}

}  // namespace kinex
