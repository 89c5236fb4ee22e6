// Copyright 2026 The tactex Authors.
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

#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tactex/coverage.hpp"
#include "tactex/metrics.hpp"
#include "tactex/point_grid.hpp"
#include "tactex/primitives.hpp"

using namespace tactex;

namespace {

std::vector<Vec3> random_cloud(Rng& rng, std::size_t n, double extent) {
  std::vector<Vec3> pts(n);
  for (Vec3& p : pts) {
    p = Vec3(uniform(rng, -extent, extent), uniform(rng, -extent, extent), uniform(rng, -extent, extent));
  }
  return pts;
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("surface_iou examples") {
  Rng rng(1);
  const std::vector<Vec3> gt = random_cloud(rng, 500, 0.05);
  CHECK(surface_iou(gt, gt, 0.005) == 1.0);
  CHECK(surface_iou(gt, {}, 0.005) == 0.0);
  CHECK(testing::error_of([&] { surface_iou({}, gt, 0.005); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("chamfer examples") {
  Rng rng(2);
  const std::vector<Vec3> a = random_cloud(rng, 300, 0.05);
  CHECK(chamfer_l1(a, a) == 0.0);
  const std::vector<Vec3> p = {Vec3(0, 0, 0)};
  const std::vector<Vec3> q = {Vec3(0.01, 0, 0)};
  CHECK(chamfer_l1(p, q) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(testing::error_of([&] { chamfer_l1(a, {}); }) == ErrorCode::kInvalidArgument);
  CHECK(testing::error_of([&] { chamfer_l1({}, a); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("metrics equal the brute-force oracles") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const double extent = uniform(rng, 0.005, 0.2);
    const std::vector<Vec3> a = random_cloud(rng, 1 + uniform_index(rng, 500), extent);
    const std::vector<Vec3> b = random_cloud(rng, 1 + uniform_index(rng, 500), extent);
    const double delta = uniform(rng, 0.001, 0.02);
    CHECK(surface_iou(a, b, delta) == oracle::iou(a, b, delta));
    CHECK(rel_close(chamfer_l1(a, b), oracle::chamfer(a, b), 1e-12));
    CHECK(rel_close(directed_mean_distance(a, b), oracle::directed(a, b), 1e-12));
  }
}

TEST_CASE("chamfer is symmetric and non-negative") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<Vec3> a = random_cloud(rng, 200, 0.05);
    const std::vector<Vec3> b = random_cloud(rng, 350, 0.05);
    CHECK(chamfer_l1(a, b) == chamfer_l1(b, a));
    CHECK(chamfer_l1(a, b) > 0.0);
  }
  // Zero exactly when every point has a coincident partner both ways.
  std::vector<Vec3> a = random_cloud(rng, 50, 0.05);
  std::vector<Vec3> b = a;
  b.insert(b.end(), a.begin(), a.begin() + 10);
  CHECK(chamfer_l1(a, b) == 0.0);
  b.push_back(Vec3(1, 1, 1));
  CHECK(chamfer_l1(a, b) > 0.0);
}

TEST_CASE("iou never decreases when points are added") {
  Rng rng(5);
  const std::vector<Vec3> gt = random_cloud(rng, 2000, 0.05);
  std::vector<Vec3> obs;
  double prev = 0.0;
  for (int i = 0; i < 40; ++i) {
    const std::vector<Vec3> more = random_cloud(rng, 20, 0.06);
    obs.insert(obs.end(), more.begin(), more.end());
    const double iou = surface_iou(gt, obs, 0.005);
    CHECK(iou >= prev);
    prev = iou;
  }
}

TEST_CASE("metrics are invariant under a shared rigid transform") {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<Vec3> a = random_cloud(rng, 400, 0.05);
    const std::vector<Vec3> b = random_cloud(rng, 300, 0.05);
    const SensorPose t = oracle::random_pose(rng, 0.5);
    std::vector<Vec3> ta, tb;
    for (const Vec3& p : a) ta.push_back(t.to_world(p));
    for (const Vec3& p : b) tb.push_back(t.to_world(p));
    CHECK(std::abs(chamfer_l1(a, b) - chamfer_l1(ta, tb)) < 1e-9);
    // Points sitting at delta within rounding could flip; the random clouds
    // make that vanishingly unlikely.
    CHECK(std::abs(surface_iou(a, b, 0.01) - surface_iou(ta, tb, 0.01)) < 1e-9);
  }
}

TEST_CASE("three of six cube faces cover about half") {
  const TriangleMesh cube = make_box(Vec3(1.0, 1.0, 1.0));
  const std::vector<Vec3> gt = sample_surface(cube, 10000, 1).points;
  std::vector<Vec3> obs;
  for (const Vec3& p : gt) {
    const double h = 0.5 - 1e-12;
    if (p.x() >= h || p.y() >= h || p.z() >= h) obs.push_back(p);
  }
  const double iou = surface_iou(gt, obs, 0.005);
  CHECK(std::abs(iou - 0.5) <= 0.02);
  CHECK(iou == oracle::iou(gt, obs, 0.005));
}

TEST_CASE("coverage updates equal the all-pairs check") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<Vec3> gt = random_cloud(rng, 3000, 0.05);
    CoverageMap map(gt, 0.005);
    std::vector<std::uint8_t> want(gt.size(), 0);
    CHECK(map.update({}) == 0);
    for (int batch = 0; batch < 8; ++batch) {
      const std::vector<Vec3> pts = random_cloud(rng, 1 + uniform_index(rng, 60), 0.06);
      std::size_t fresh = 0;
      for (std::size_t i = 0; i < gt.size(); ++i) {
        if (want[i]) continue;
        for (const Vec3& p : pts) {
          if ((gt[i] - p).squaredNorm() <= 0.005 * 0.005) {
            want[i] = 1;
            ++fresh;
            break;
          }
        }
      }
      CHECK(coverage_update(map, pts) == fresh);
      CHECK(map.covered() == want);
    }
    CHECK(map.iou() == oracle::iou(gt, map.observed(), 0.005));
    map.reset();
    CHECK(map.covered_count() == 0);
    CHECK(map.observed().empty());
  }
}

TEST_CASE("a point on a sample covers it") {
  const std::vector<Vec3> gt = {Vec3(0, 0, 0), Vec3(0.1, 0, 0)};
  CoverageMap map(gt, 0.005);
  const std::vector<Vec3> hit = {Vec3(0.1, 0, 0)};
  CHECK(map.update(hit) == 1);
  CHECK(map.covered()[1] == 1);
  CHECK(map.iou() == 0.5);
  CHECK(map.update(hit) == 0);
}

TEST_CASE("coverage without a kept cloud still tracks iou") {
  Rng rng(8);
  const std::vector<Vec3> gt = random_cloud(rng, 1000, 0.05);
  CoverageMap kept(gt, 0.005, true), dropped(gt, 0.005, false);
  const std::vector<Vec3> pts = random_cloud(rng, 100, 0.05);
  kept.update(pts);
  dropped.update(pts);
  CHECK(kept.covered() == dropped.covered());
  CHECK(dropped.observed().empty());
}

TEST_CASE("point grid nearest matches brute force") {
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<Vec3> pts = random_cloud(rng, 2000, 0.05);
    const PointGrid grid(pts, PointGrid::suggest_cell(pts));
    for (int i = 0; i < 500; ++i) {
      const Vec3 q = random_cloud(rng, 1, 0.2)[0];
      CHECK(grid.nearest_distance2(q) == oracle::nearest2(pts, q));
    }
  }
  const std::vector<Vec3> none;
  const PointGrid empty(none, 0.01);
  CHECK(std::isinf(empty.nearest_distance2(Vec3::Zero())));
}
