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

#include "kinex/analysis.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "kinex/error.hpp"

namespace kinex {
namespace {

constexpr double kVarianceFloor = 1e-12;

Vec3 centroid(const std::vector<Vec3>& pts) {
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

std::string percent_or_na(long long num, long long den) {
  if (den == 0) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * static_cast<double>(num) / den);
  return buf;
}

}  // namespace

CorrelationMatrix correlation_matrix(const std::vector<std::vector<Vec3>>& frames,
                                     const std::vector<int>& atom_selection) {
  if (atom_selection.empty()) throw ModelError("correlation selection is empty");
  if (frames.size() < 2) throw ModelError("correlation needs at least two conformations");
  const std::size_t s = atom_selection.size();
  for (const auto& f : frames) {
    if (f.size() != s) throw ModelError("ensemble frame size does not match the selection");
  }
  const double inv_k = 1.0 / static_cast<double>(frames.size());

  std::vector<Vec3> mean(s, Vec3::Zero());
  for (const auto& f : frames) {
    for (std::size_t i = 0; i < s; ++i) mean[i] += f[i];
  }
  for (auto& m : mean) m *= inv_k;

  // <dp_i . dp_j> accumulated over the ensemble.
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(static_cast<long>(s), static_cast<long>(s));
  for (const auto& f : frames) {
    for (std::size_t i = 0; i < s; ++i) {
      const Vec3 di = f[i] - mean[i];
      for (std::size_t j = i; j < s; ++j) {
        cov(static_cast<long>(i), static_cast<long>(j)) += di.dot(f[j] - mean[j]);
      }
    }
  }
  cov *= inv_k;

  CorrelationMatrix out;
  out.atom_selection = atom_selection;
  out.values.setZero(static_cast<long>(s), static_cast<long>(s));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i; j < s; ++j) {
      const double vi = cov(static_cast<long>(i), static_cast<long>(i));
      const double vj = cov(static_cast<long>(j), static_cast<long>(j));
      double c = 0;
      if (vi >= kVarianceFloor && vj >= kVarianceFloor) {
        c = cov(static_cast<long>(i), static_cast<long>(j)) / std::sqrt(vi * vj);
      }
      out.values(static_cast<long>(i), static_cast<long>(j)) = c;
      out.values(static_cast<long>(j), static_cast<long>(i)) = c;
    }
  }
  return out;
}

Mat3 kabsch_rotation(const std::vector<Vec3>& fixed, const std::vector<Vec3>& moving) {
  if (fixed.size() != moving.size() || fixed.empty()) {
    throw ModelError("superposition needs two equally sized non-empty point sets");
  }
  const Vec3 cf = centroid(fixed);
  const Vec3 cm = centroid(moving);
  Mat3 h = Mat3::Zero();
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    h += (moving[i] - cm) * (fixed[i] - cf).transpose();
  }
  Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 d = Mat3::Identity();
  if ((svd.matrixV() * svd.matrixU().transpose()).determinant() < 0) d(2, 2) = -1;
  return svd.matrixV() * d * svd.matrixU().transpose();
}

double rmsd(const std::vector<Vec3>& a, const std::vector<Vec3>& b, bool superpose) {
  if (a.size() != b.size() || a.empty()) {
    throw ModelError("RMSD needs two equally sized non-empty selections");
  }
  double sum = 0;
  if (superpose) {
    const Vec3 ca = centroid(a);
    const Vec3 cb = centroid(b);
    const Mat3 rot = kabsch_rotation(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Vec3 moved = rot * (b[i] - cb) + ca;
      sum += (a[i] - moved).squaredNorm();
    }
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]).squaredNorm();
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

EnsembleStats rejection_table(const std::vector<std::pair<std::string, PlannerStats>>& runs) {
  if (runs.empty()) throw ModelError("rejection table needs at least one run");
  EnsembleStats out;
  for (const auto& [label, s] : runs) {
    RejectionRow row;
    row.label = label;
    row.attempts = s.attempts;
    row.accepted = s.accepted;
    row.clash_rejected = s.clash_rejected;
    row.disk_rejected = s.disk_rejected;
    row.degenerate = s.degenerate;
    row.clash_rate = percent_or_na(s.clash_rejected, s.attempts);
    row.disk_reject_rate = percent_or_na(s.disk_rejected, s.attempts);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string rejection_csv(const EnsembleStats& stats) {
  std::ostringstream ss;
  ss << "run,attempts,accepted,clash_rejected,disk_rejected,degenerate,clash_rate,disk_reject_rate\n";
  for (const auto& r : stats.rows) {
    ss << r.label << ',' << r.attempts << ',' << r.accepted << ',' << r.clash_rejected << ','
       << r.disk_rejected << ',' << r.degenerate << ',' << r.clash_rate << ','
       << r.disk_reject_rate << '\n';
  }
  return ss.str();
}

std::string correlation_csv(const CorrelationMatrix& c) {
  std::ostringstream ss;
  ss << "atom";
  for (int id : c.atom_selection) ss << ",a" << id;
  ss << '\n';
  char buf[32];
  for (long i = 0; i < c.values.rows(); ++i) {
    ss << 'a' << c.atom_selection[static_cast<std::size_t>(i)];
    for (long j = 0; j < c.values.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.6f", c.values(i, j));
      ss << ',' << buf;
    }
    ss << '\n';
  }
  return ss.str();
}

}  // namespace kinex
