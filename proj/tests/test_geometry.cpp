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

#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>
#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tactex/geometry.hpp"
#include "tactex/mesh_io.hpp"
#include "tactex/primitives.hpp"

using namespace tactex;
using testing::error_of;

namespace {

TriangleMesh unit_cube() { return make_box(Vec3(1.0, 1.0, 1.0)); }

// Open (non-watertight) mesh: a box with its top two triangles removed.
TriangleMesh open_box() {
  const TriangleMesh box = make_box(Vec3(0.04, 0.04, 0.04));
  std::vector<Triangle> tris;
  for (std::size_t t = 0; t < box.triangles().size(); ++t) {
    if (box.triangle_normal(t).z() > 0.9) continue;
    tris.push_back(box.triangles()[t]);
  }
  return TriangleMesh::create(box.vertices(), tris);
}

const char* kCubeObj = R"(# unit cube
v -0.5 -0.5 -0.5
v 0.5 -0.5 -0.5
v 0.5 0.5 -0.5
v -0.5 0.5 -0.5
v -0.5 -0.5 0.5
v 0.5 -0.5 0.5
v 0.5 0.5 0.5
v -0.5 0.5 0.5
f 1 4 3
f 1 3 2
f 5 6 7
f 5 7 8
f 1 2 6
f 1 6 5
f 2 3 7
f 2 7 6
f 3 4 8
f 3 8 7
f 4 1 5
f 4 5 8
)";

}  // namespace

TEST_CASE("load_mesh reads a unit cube OBJ") {
  const auto dir = testing::scratch("geometry_obj");
  testing::write_text(dir / "cube.obj", kCubeObj);
  const TriangleMesh m = load_mesh(dir / "cube.obj");
  CHECK(m.vertices().size() == 8);
  CHECK(m.triangles().size() == 12);
  CHECK(m.surface_area() == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(m.watertight());
}

TEST_CASE("load_mesh errors are distinct") {
  const auto dir = testing::scratch("geometry_errors");
  testing::write_text(dir / "empty.obj", "# nothing here\n");
  testing::write_text(dir / "nan.obj", "v 0 0 0\nv 1 0 nan\nv 0 1 0\nf 1 2 3\n");
  testing::write_text(dir / "badidx.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n");
  CHECK(error_of([&] { load_mesh(dir / "missing.obj"); }) == ErrorCode::kIo);
  CHECK(error_of([&] { load_mesh(dir / "empty.obj"); }) == ErrorCode::kZeroTriangles);
  CHECK(error_of([&] { load_mesh(dir / "nan.obj"); }) == ErrorCode::kNonFiniteVertex);
  CHECK(error_of([&] { load_mesh(dir / "badidx.obj"); }) == ErrorCode::kParse);
}

TEST_CASE("OBJ polygons, negative indices and STL round trips") {
  const auto dir = testing::scratch("geometry_formats");
  testing::write_text(dir / "quad.obj", "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf -4 -3 -2 -1\n");
  const TriangleMesh quad = load_mesh(dir / "quad.obj");
  CHECK(quad.triangles().size() == 2);
  CHECK(quad.surface_area() == doctest::Approx(1.0));
  CHECK_FALSE(quad.watertight());

  const TriangleMesh sphere = make_icosphere(0.05, 3);
  write_stl(sphere, dir / "sphere.stl");
  const TriangleMesh back = load_mesh(dir / "sphere.stl");
  CHECK(back.triangles().size() == sphere.triangles().size());
  CHECK(back.vertices().size() == sphere.vertices().size());
  CHECK(back.watertight());
  CHECK(back.surface_area() == doctest::Approx(sphere.surface_area()).epsilon(1e-6));

  write_obj(sphere, dir / "sphere.obj");
  const TriangleMesh back_obj = load_mesh(dir / "sphere.obj", 2.0);
  CHECK(back_obj.surface_area() == doctest::Approx(4.0 * sphere.surface_area()).epsilon(1e-12));
}

TEST_CASE("icosphere area is close to the analytic sphere") {
  const auto dir = testing::scratch("geometry_sphere");
  write_stl(make_icosphere(0.05, 4), dir / "s.stl");
  const TriangleMesh m = load_mesh(dir / "s.stl");
  const double exact = 4.0 * std::numbers::pi * 0.05 * 0.05;
  CHECK(std::abs(m.surface_area() - exact) / exact < 0.02);
}

TEST_CASE("signed distance on the unit cube") {
  const MeshDistance d(std::make_shared<const TriangleMesh>(unit_cube()));
  CHECK(d.signed_distance(Vec3(0, 0, 0)) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(d.signed_distance(Vec3(1.0, 0, 0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.signed_distance(Vec3(1.0, 1.0, 1.0)) == doctest::Approx(std::sqrt(0.75)));
  CHECK(std::abs(d.signed_distance(Vec3(0.5, 0.1, 0.2))) < 1e-15);
}

TEST_CASE("signed distance matches the brute-force oracle") {
  const std::vector<TriangleMesh> meshes = {make_primitive("cube"), make_primitive("sphere"),
                                            make_primitive("capsule"),
                                            make_primitive("cylinder")};
  for (const TriangleMesh& mesh : meshes) {
    const MeshDistance d(std::make_shared<const TriangleMesh>(mesh));
    Rng rng(11);
    const Vec3 c = mesh.bounds().center();
    const Vec3 e = mesh.bounds().extent();
    double worst = 0.0;
    std::uint32_t hint = 0;
    for (int i = 0; i < 1000; ++i) {
      Vec3 p;
      for (int k = 0; k < 3; ++k) p[k] = c[k] + uniform(rng, -0.8, 0.8) * e[k];
      const double want = oracle::signed_distance(mesh, p);
      worst = std::max(worst, std::abs(d.signed_distance(p) - want));
      worst = std::max(worst, std::abs(d.signed_distance(p, &hint) - want));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("hinted queries do not depend on the hint") {
  const auto mesh = std::make_shared<const TriangleMesh>(make_primitive("cube"));
  const MeshDistance d(mesh);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Vec3 p(uniform(rng, -0.05, 0.05), uniform(rng, -0.05, 0.05), uniform(rng, -0.05, 0.05));
    const NearestHit a = d.nearest(p);
    for (std::uint32_t h : {0u, 5u, 11u, 999u}) {
      const NearestHit b = d.nearest(p, h);
      CHECK(a.triangle == b.triangle);
      CHECK(a.distance2 == b.distance2);
    }
  }
}

TEST_CASE("open meshes use the nearest face normal for the sign") {
  const TriangleMesh open = open_box();
  CHECK_FALSE(open.watertight());
  const MeshDistance d(std::make_shared<const TriangleMesh>(open));
  // Below the bottom face: outside. Just above the bottom face: behind its
  // outward normal, so negative even though the box is open at the top.
  CHECK(d.signed_distance(Vec3(0, 0, -0.03)) == doctest::Approx(0.01));
  CHECK(d.signed_distance(Vec3(0, 0, -0.019)) == doctest::Approx(-0.001));
  // Beside a side wall: outside.
  CHECK(d.signed_distance(Vec3(0.03, 0, 0)) == doctest::Approx(0.01));
}

TEST_CASE("sample_surface is area uniform over cube faces") {
  const TriangleMesh cube = unit_cube();
  const std::size_t n = 60000;
  const SurfaceSampleSet s = sample_surface(cube, n, 5);
  REQUIRE(s.count() == n);
  std::array<int, 6> per_face{};
  for (const Vec3& p : s.points) {
    int face = -1;
    for (int k = 0; k < 3; ++k) {
      if (std::abs(p[k] - 0.5) < 1e-12) face = 2 * k;
      if (std::abs(p[k] + 0.5) < 1e-12) face = 2 * k + 1;
    }
    REQUIRE(face >= 0);
    ++per_face[face];
  }
  const double expected = n / 6.0;
  const double sigma = std::sqrt(n * (1.0 / 6.0) * (5.0 / 6.0));
  double chi2 = 0.0;
  for (int c : per_face) {
    CHECK(std::abs(c - expected) <= 3.0 * sigma);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  const boost::math::chi_squared dist(5);
  CHECK(boost::math::cdf(boost::math::complement(dist, chi2)) > 1e-3);
}

TEST_CASE("sample_surface points lie on the surface") {
  for (const char* name : {"sphere", "capsule", "cylinder"}) {
    const auto mesh = std::make_shared<const TriangleMesh>(make_primitive(name));
    const MeshDistance d(mesh);
    const SurfaceSampleSet s = sample_surface(*mesh, 2000, 9);
    double worst = 0.0;
    for (const Vec3& p : s.points) worst = std::max(worst, std::abs(d.signed_distance(p)));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("sample_surface edge cases") {
  const TriangleMesh tri =
      TriangleMesh::create({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)}, {{0, 1, 2}});
  const SurfaceSampleSet s = sample_surface(tri, 500, 1);
  for (const Vec3& p : s.points) {
    CHECK(p.z() == 0.0);
    CHECK(p.x() >= 0.0);
    CHECK(p.y() >= 0.0);
    CHECK(p.x() + p.y() <= 1.0 + 1e-15);
  }
  const SurfaceSampleSet a = sample_surface(unit_cube(), 1000, 42);
  const SurfaceSampleSet b = sample_surface(unit_cube(), 1000, 42);
  CHECK(a.points == b.points);
  CHECK(error_of([&] { sample_surface(tri, 0, 1); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("workspace inflation arithmetic") {
  const TriangleMesh cube = unit_cube();
  const double body = 0.025;
  const Workspace w0 = make_workspace(cube, 0.0, body);
  CHECK(w0.max_corner.x() == doctest::Approx(0.5 + body));
  CHECK(w0.min_corner.z() == doctest::Approx(-0.5 - body));
  const Workspace w = make_workspace(cube, 0.25, body);
  const double margin = 0.25 * std::sqrt(3.0) + body;
  for (int k = 0; k < 3; ++k) {
    CHECK(w.max_corner[k] == doctest::Approx(0.5 + margin).epsilon(1e-14));
    CHECK(w.min_corner[k] == doctest::Approx(-0.5 - margin).epsilon(1e-14));
  }
  CHECK(w.contains(w.max_corner));
  CHECK(w.contains(w.min_corner));
  CHECK_FALSE(w.contains(w.max_corner + Vec3(1e-9, 0, 0)));
  for (const Vec3& v : cube.vertices()) CHECK(w.contains(v));
}

TEST_CASE("flat meshes get a body length on the degenerate axis") {
  const TriangleMesh sheet = TriangleMesh::create(
      {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)}, {{0, 1, 2}, {0, 2, 3}});
  const Workspace w = make_workspace(sheet, 0.0, 0.025);
  CHECK(w.max_corner.z() - w.min_corner.z() > 0.05 - 1e-12);
}

TEST_CASE("mesh validation") {
  CHECK(error_of([] { TriangleMesh::create({}, {}); }) == ErrorCode::kZeroTriangles);
  CHECK(error_of([] {
          TriangleMesh::create({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, std::nan(""), 0)},
                               {{0, 1, 2}});
        }) == ErrorCode::kNonFiniteVertex);
}

TEST_CASE("primitives are watertight with outward normals") {
  for (const char* name : {"cube", "sphere", "cylinder", "capsule"}) {
    const auto mesh = std::make_shared<const TriangleMesh>(make_primitive(name));
    CHECK(mesh->watertight());
    const MeshDistance d(mesh);
    CHECK(d.signed_distance(mesh->bounds().center()) < 0.0);
    CHECK(d.signed_distance(mesh->bounds().max + Vec3(0.01, 0.01, 0.01)) > 0.0);
  }
  CHECK(is_axis_aligned_box(make_primitive("cube")));
  CHECK_FALSE(is_axis_aligned_box(make_primitive("sphere")));
  CHECK_FALSE(is_axis_aligned_box(make_primitive("cylinder")));
}
