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

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace tactex {

using Vec3 = Eigen::Vector3d;
using Triangle = std::array<std::uint32_t, 3>;

struct Aabb {
  Vec3 min = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 max = Vec3::Constant(-std::numeric_limits<double>::infinity());

  void extend(const Vec3& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  void extend(const Aabb& b) {
    min = min.cwiseMin(b.min);
    max = max.cwiseMax(b.max);
  }
  Vec3 extent() const { return max - min; }
  Vec3 center() const { return 0.5 * (min + max); }
  double squared_distance(const Vec3& p) const;
};

// Indexed triangle mesh in meters. Construct through `create`, which
// validates indices and coordinates and derives the area and the
// watertightness flag (every edge shared by exactly two triangles with
// opposite orientation).
class TriangleMesh {
 public:
  static TriangleMesh create(std::vector<Vec3> vertices,
                             std::vector<Triangle> triangles);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  double surface_area() const { return surface_area_; }
  bool watertight() const { return watertight_; }
  const Aabb& bounds() const { return bounds_; }

  double triangle_area(std::size_t t) const;
  Vec3 triangle_normal(std::size_t t) const;  // unit, zero for degenerate

  TriangleMesh scaled(double factor) const;
  TriangleMesh translated(const Vec3& offset) const;

 private:
  TriangleMesh() = default;

  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
  double surface_area_ = 0.0;
  bool watertight_ = false;
  Aabb bounds_;
};

enum class ClosestFeature : std::uint8_t {
  kVertex0, kVertex1, kVertex2, kEdge01, kEdge12, kEdge20, kFace
};

struct ClosestPointResult {
  Vec3 point;
  double distance2;
  ClosestFeature feature;
};

// Closest point on triangle (a, b, c) to p.
ClosestPointResult closest_point_on_triangle(const Vec3& p, const Vec3& a,
                                             const Vec3& b, const Vec3& c);

struct NearestHit {
  double distance2 = std::numeric_limits<double>::infinity();
  Vec3 point = Vec3::Zero();
  std::uint32_t triangle = 0;
  ClosestFeature feature = ClosestFeature::kFace;
};

// Distance queries against a mesh, accelerated by an AABB hierarchy.
//
// Sign convention: for watertight meshes the sign comes from the
// angle-weighted pseudonormal of the closest feature, which is exact for
// closed, consistently oriented meshes (negative inside). For open meshes
// the sign is that of the nearest triangle's face normal, so "inside" means
// behind the nearest face. Read-only after construction; queries may run
// concurrently.
class MeshDistance {
 public:
  explicit MeshDistance(std::shared_ptr<const TriangleMesh> mesh);

  const TriangleMesh& mesh() const { return *mesh_; }
  std::shared_ptr<const TriangleMesh> mesh_ptr() const { return mesh_; }

  NearestHit nearest(const Vec3& p) const;
  // `hint` is a triangle likely to be near p; it only seeds the search bound.
  NearestHit nearest(const Vec3& p, std::uint32_t hint) const;

  double signed_distance(const Vec3& p) const;
  double signed_distance(const Vec3& p, std::uint32_t* hint) const;

 private:
  struct Node {
    Aabb box;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint32_t first = 0;  // first slot in order_ for leaves
    std::uint32_t count = 0;  // > 0 for leaves
  };

  std::uint32_t build(std::uint32_t first, std::uint32_t count);
  void search(const Vec3& p, NearestHit& best) const;
  double sign_of(const Vec3& p, const NearestHit& hit) const;

  std::shared_ptr<const TriangleMesh> mesh_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> order_;  // triangle indices in leaf order
  std::vector<Vec3> face_normals_;
  std::vector<Vec3> vertex_normals_;               // angle weighted
  std::vector<std::array<Vec3, 3>> edge_normals_;  // per triangle: 01, 12, 20
};

// Axis-aligned box the sensor reference point must stay inside.
struct Workspace {
  Vec3 min_corner;
  Vec3 max_corner;
  Vec3 center;

  bool contains(const Vec3& p) const {
    return (p.array() >= min_corner.array()).all() &&
           (p.array() <= max_corner.array()).all();
  }
};

// Object bounding box grown on every side by `inflation` times its diagonal
// plus one sensor body length. Axes with zero extent receive one extra body
// length. The center is the center of the object's bounding box.
Workspace make_workspace(const TriangleMesh& mesh, double inflation,
                         double sensor_length);

struct SurfaceSampleSet {
  std::vector<Vec3> points;
  std::vector<std::uint32_t> triangle;  // source triangle per point
  std::size_t count() const { return points.size(); }
};

// Area-uniform samples: a triangle is chosen with probability proportional
// to its area, then a point uniformly inside it.
SurfaceSampleSet sample_surface(const TriangleMesh& mesh, std::size_t n,
                                std::uint64_t seed);

}  // namespace tactex
