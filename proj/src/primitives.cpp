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

#include "tactex/primitives.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "tactex/error.hpp"

namespace tactex {

TriangleMesh make_box(const Vec3& size) {
  const Vec3 h = 0.5 * size;
  std::vector<Vec3> v;
  for (int i = 0; i < 8; ++i) {
    v.emplace_back((i & 1) ? h.x() : -h.x(), (i & 2) ? h.y() : -h.y(),
                   (i & 4) ? h.z() : -h.z());
  }
  std::vector<Triangle> t = {
      {0, 2, 1}, {1, 2, 3},  // -z
      {4, 5, 6}, {5, 7, 6},  // +z
      {0, 1, 4}, {1, 5, 4},  // -y
      {2, 6, 3}, {3, 6, 7},  // +y
      {0, 4, 2}, {2, 4, 6},  // -x
      {1, 3, 5}, {3, 7, 5},  // +x
  };
  return TriangleMesh::create(std::move(v), std::move(t));
}

TriangleMesh make_icosphere(double radius, int subdivisions) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
  };
  for (Vec3& p : v) p.normalize();
  std::vector<Triangle> t = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mid;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find({key.first, key.second});
      if (it != mid.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      const auto idx = static_cast<std::uint32_t>(v.size() - 1);
      mid[{key.first, key.second}] = idx;
      return idx;
    };
    std::vector<Triangle> next;
    next.reserve(t.size() * 4);
    for (const Triangle& tri : t) {
      const std::uint32_t a = midpoint(tri[0], tri[1]);
      const std::uint32_t b = midpoint(tri[1], tri[2]);
      const std::uint32_t c = midpoint(tri[2], tri[0]);
      next.push_back({tri[0], a, c});
      next.push_back({tri[1], b, a});
      next.push_back({tri[2], c, b});
      next.push_back({a, b, c});
    }
    t = std::move(next);
  }
  for (Vec3& p : v) p *= radius;
  return TriangleMesh::create(std::move(v), std::move(t));
}

namespace {

// Closed surface of revolution about z from a profile of (radius, z) rings
// ordered from the top pole (radius 0) to the bottom pole (radius 0).
TriangleMesh Revolve(const std::vector<std::pair<double, double>>& profile,
                     int segments) {
  std::vector<Vec3> v;
  std::vector<Triangle> t;
  const auto seg = static_cast<std::uint32_t>(segments);
  std::vector<std::uint32_t> ring_start;
  for (const auto& [r, z] : profile) {
    ring_start.push_back(static_cast<std::uint32_t>(v.size()));
    if (r == 0.0) {
      v.emplace_back(0.0, 0.0, z);
      continue;
    }
    for (std::uint32_t s = 0; s < seg; ++s) {
      const double a = 2.0 * std::numbers::pi * s / segments;
      v.emplace_back(r * std::cos(a), r * std::sin(a), z);
    }
  }
  for (std::size_t k = 0; k + 1 < profile.size(); ++k) {
    const bool top_pole = profile[k].first == 0.0;
    const bool bottom_pole = profile[k + 1].first == 0.0;
    const std::uint32_t a0 = ring_start[k];
    const std::uint32_t b0 = ring_start[k + 1];
    for (std::uint32_t s = 0; s < seg; ++s) {
      const std::uint32_t s1 = (s + 1) % seg;
      if (top_pole) {
        t.push_back({a0, b0 + s, b0 + s1});
      } else if (bottom_pole) {
        t.push_back({a0 + s, b0, a0 + s1});
      } else {
        t.push_back({a0 + s, b0 + s, b0 + s1});
        t.push_back({a0 + s, b0 + s1, a0 + s1});
      }
    }
  }
  return TriangleMesh::create(std::move(v), std::move(t));
}

}  // namespace

TriangleMesh make_cylinder(double radius, double length, int segments) {
  const double h = 0.5 * length;
  return Revolve({{0.0, h}, {radius, h}, {radius, -h}, {0.0, -h}}, segments);
}

TriangleMesh make_capsule(double radius, double length, int segments, int rings) {
  const double h = 0.5 * length;
  std::vector<std::pair<double, double>> profile;
  profile.emplace_back(0.0, h + radius);
  for (int k = 1; k <= rings; ++k) {
    const double a = 0.5 * std::numbers::pi * k / rings;
    profile.emplace_back(radius * std::sin(a), h + radius * std::cos(a));
  }
  for (int k = 0; k < rings; ++k) {
    const double a = 0.5 * std::numbers::pi * k / rings;
    profile.emplace_back(radius * std::cos(a), -h - radius * std::sin(a));
  }
  profile.emplace_back(0.0, -h - radius);
  return Revolve(profile, segments);
}

TriangleMesh make_primitive(std::string_view name) {
  if (name == "cube") return make_box(Vec3::Constant(0.057));
  if (name == "sphere") return make_icosphere(0.03, 4);
  if (name == "cylinder") return make_cylinder(0.02, 0.06, 64);
  if (name == "capsule") return make_capsule(0.02, 0.04, 64, 16);
  throw Error(ErrorCode::kInvalidArgument,
              "unknown primitive '" + std::string(name) +
                  "' (expected cube, sphere, cylinder, capsule)");
}

bool is_axis_aligned_box(const TriangleMesh& mesh, double tolerance) {
  const Aabb& box = mesh.bounds();
  const Vec3 e = box.extent();
  const double scale = e.maxCoeff();
  for (const Vec3& p : mesh.vertices()) {
    bool on_face = false;
    for (int axis = 0; axis < 3; ++axis) {
      on_face = on_face || std::abs(p[axis] - box.min[axis]) <= tolerance * scale ||
                std::abs(p[axis] - box.max[axis]) <= tolerance * scale;
    }
    if (!on_face) return false;
  }
  const double area = 2.0 * (e.x() * e.y() + e.y() * e.z() + e.z() * e.x());
  return mesh.watertight() &&
         std::abs(mesh.surface_area() - area) <= tolerance * area * 10.0;
}

}  // namespace tactex
