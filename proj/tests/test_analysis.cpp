// Copyright 2026 The Kinex Authors
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

#include <cmath>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "kinex/analysis.hpp"
#include "kinex/rng.hpp"
#include "helpers.hpp"

namespace {

using namespace kinex;

using Frames = std::vector<std::vector<Vec3>>;

Frames two_atom_frames(Rng& rng, int count, double mirror) {
  // Atom 0 takes Gaussian displacements; atom 1 moves mirror * the same
  // displacement, so mirror = 1 is perfect coupling and -1 perfect
  // anticoupling.
  NormalSampler normal;
  Frames frames;
  for (int k = 0; k < count; ++k) {
    const Vec3 d(normal(rng), normal(rng), normal(rng));
    frames.push_back({Vec3(0, 0, 0) + d, Vec3(5, 0, 0) + mirror * d});
  }
  return frames;
}

TEST_CASE("perfectly coupled motion correlates to one") {
  Rng rng = make_substream(81, 0, 0);
  const CorrelationMatrix c = correlation_matrix(two_atom_frames(rng, 200, 1.0), {1, 2});
  REQUIRE(c.values.rows() == 2);
  CHECK(c.values(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.values(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.atom_selection == std::vector<int>{1, 2});
}

TEST_CASE("mirrored motion correlates to minus one") {
  Rng rng = make_substream(82, 0, 0);
  const CorrelationMatrix c = correlation_matrix(two_atom_frames(rng, 200, -1.0), {1, 2});
  CHECK(c.values(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(c.values(1, 0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("independent motion decorrelates with enough frames") {
  Rng rng = make_substream(83, 0, 0);
  NormalSampler normal;
  Frames frames;
  for (int k = 0; k < 10000; ++k) {
    frames.push_back({Vec3(normal(rng), normal(rng), normal(rng)),
                      Vec3(5, 0, 0) + Vec3(normal(rng), normal(rng), normal(rng))});
  }
  const CorrelationMatrix c = correlation_matrix(frames, {1, 2});
  CHECK(std::abs(c.values(0, 1)) < 0.05);
}

TEST_CASE("correlations are symmetric and bounded") {
  Rng rng = make_substream(84, 0, 0);
  NormalSampler normal;
  const int atoms = 6;
  Frames frames;
  for (int k = 0; k < 300; ++k) {
    std::vector<Vec3> frame;
    const Vec3 common(normal(rng), normal(rng), normal(rng));
    for (int s = 0; s < atoms; ++s) {
      frame.emplace_back(Vec3(3.0 * s, 0, 0) + 0.5 * common +
                         Vec3(normal(rng), normal(rng), normal(rng)));
    }
    frames.push_back(std::move(frame));
  }
  std::vector<int> ids;
  for (int s = 0; s < atoms; ++s) ids.push_back(s + 10);
  const CorrelationMatrix c = correlation_matrix(frames, ids);
  for (int i = 0; i < atoms; ++i) {
    CHECK(c.values(i, i) == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 0; j < atoms; ++j) {
      CHECK(std::abs(c.values(i, j) - c.values(j, i)) < 1e-12);
      CHECK(std::abs(c.values(i, j)) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("correlation ignores constant offsets") {
  Rng rng = make_substream(85, 0, 0);
  const Frames base = two_atom_frames(rng, 150, 0.7);
  Frames shifted = base;
  for (auto& frame : shifted) {
    frame[0] += Vec3(100, -3, 7);
    frame[1] += Vec3(-40, 11, 0.5);
  }
  const CorrelationMatrix a = correlation_matrix(base, {1, 2});
  const CorrelationMatrix b = correlation_matrix(shifted, {1, 2});
  CHECK(std::abs(a.values(0, 1) - b.values(0, 1)) < 1e-10);
}

TEST_CASE("an immobile atom reports zero coupling, not NaN") {
  Frames frames;
  Rng rng = make_substream(86, 0, 0);
  NormalSampler normal;
  for (int k = 0; k < 100; ++k) {
    frames.push_back({Vec3(0, 0, 0),  // pinned
                      Vec3(5, 0, 0) + Vec3(normal(rng), normal(rng), normal(rng))});
  }
  const CorrelationMatrix c = correlation_matrix(frames, {1, 2});
  CHECK(c.values(0, 0) == 0.0);
  CHECK(c.values(0, 1) == 0.0);
  CHECK(c.values(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("kabsch recovers a known rotation") {
  Rng rng = make_substream(87, 0, 0);
  NormalSampler normal;
  std::vector<Vec3> fixed;
  for (int i = 0; i < 12; ++i)
    fixed.emplace_back(normal(rng), normal(rng), normal(rng));
  const Mat3 r = Eigen::AngleAxisd(0.8, Vec3(1, 2, 3).normalized()).toRotationMatrix();
  std::vector<Vec3> moving;
  for (const Vec3& p : fixed) moving.push_back(r.transpose() * p + Vec3(4, -2, 9));
  const Mat3 got = kabsch_rotation(fixed, moving);
  CHECK((got - r).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(got.determinant() == doctest::Approx(1.0));
}

TEST_CASE("rmsd of identical sets is zero") {
  std::vector<Vec3> a = {{0, 0, 0}, {1, 0, 0}, {0, 2, 0}};
  CHECK(rmsd(a, a, false) == 0.0);
  CHECK(rmsd(a, a, true) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("superposed rmsd is invariant to rigid motion") {
  Rng rng = make_substream(88, 0, 0);
  NormalSampler normal;
  std::vector<Vec3> a;
  for (int i = 0; i < 20; ++i) a.emplace_back(normal(rng), normal(rng), normal(rng));
  const Mat3 r = Eigen::AngleAxisd(1.2, Vec3(0, 1, 1).normalized()).toRotationMatrix();
  std::vector<Vec3> b;
  for (const Vec3& p : a) b.push_back(r * p + Vec3(-3, 8, 1));
  CHECK(rmsd(a, b, true) < 1e-10);
  CHECK(rmsd(a, b, false) > 1.0);
}

TEST_CASE("superposed rmsd matches the quaternion method") {
  Rng rng = make_substream(89, 0, 0);
  NormalSampler normal;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec3> a, b;
    for (int i = 0; i < 15; ++i) {
      a.emplace_back(normal(rng), normal(rng), normal(rng));
      b.emplace_back(normal(rng), normal(rng), normal(rng));
    }
    const double got = rmsd(a, b, true);
    const double want = kinex::test::qcp_rmsd(a, b);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("plain rmsd obeys the triangle inequality") {
  Rng rng = make_substream(90, 0, 0);
  NormalSampler normal;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec3> a, b, c;
    for (int i = 0; i < 8; ++i) {
      a.emplace_back(normal(rng), normal(rng), normal(rng));
      b.emplace_back(normal(rng), normal(rng), normal(rng));
      c.emplace_back(normal(rng), normal(rng), normal(rng));
    }
    CHECK(rmsd(a, c, false) <= rmsd(a, b, false) + rmsd(b, c, false) + 1e-12);
    CHECK(rmsd(a, b, false) == doctest::Approx(rmsd(b, a, false)));
  }
}

TEST_CASE("rejection rates format as percentages with n/a for empty runs") {
  PlannerStats s;
  s.attempts = 100;
  s.accepted = 90;
  s.clash_rejected = 4;
  s.disk_rejected = 6;
  PlannerStats empty;
  const EnsembleStats table = rejection_table({{"poisson", s}, {"idle", empty}});
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].clash_rate == "4.00%");
  CHECK(table.rows[0].disk_reject_rate == "6.00%");
  CHECK(table.rows[1].clash_rate == "n/a");
  CHECK(table.rows[1].disk_reject_rate == "n/a");

  const std::string csv = rejection_csv(table);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "run,attempts,accepted,clash_rejected,disk_rejected,degenerate,clash_rate,disk_reject_rate");
  std::getline(in, line);
  CHECK(line == "poisson,100,90,4,6,0,4.00%,6.00%");
  std::getline(in, line);
  CHECK(line == "idle,0,0,0,0,0,n/a,n/a");
}

TEST_CASE("correlation csv labels rows and columns by atom id") {
  CorrelationMatrix c;
  c.values = Eigen::MatrixXd(2, 2);
  c.values << 1.0, -0.25, -0.25, 1.0;
  c.atom_selection = {3, 17};
  const std::string csv = correlation_csv(c);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "atom,a3,a17");
  std::getline(in, line);
  CHECK(line == "a3,1.000000,-0.250000");
  std::getline(in, line);
  CHECK(line == "a17,-0.250000,1.000000");
}

}  // namespace
