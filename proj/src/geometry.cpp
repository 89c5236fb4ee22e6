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

#include "tactex/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "tactex/error.hpp"
#include "tactex/random.hpp"

namespace tactex {

double Aabb::squared_distance(const Vec3& p) const {
  const Vec3 below = (min - p).cwiseMax(0.0);
  const Vec3 above = (p - max).cwiseMax(0.0);
  return (below + above).squaredNorm();
}

TriangleMesh TriangleMesh::create(std::vector<Vec3> vertices,
                                  std::vector<Triangle> triangles) {
  if (triangles.empty()) {
    throw Error(ErrorCode::kZeroTriangles, "mesh has zero triangles");
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!vertices[i].allFinite()) {
      std::ostringstream msg;
      msg << "vertex " << i << " has a non-finite coordinate";
      throw Error(ErrorCode::kNonFiniteVertex, msg.str());
    }
  }
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    for (std::uint32_t idx : triangles[t]) {
      if (idx >= vertices.size()) {
        std::ostringstream msg;
        msg << "triangle " << t << " references vertex " << idx << " of "
            << vertices.size();
        throw Error(ErrorCode::kParse, msg.str());
      }
    }
  }

  TriangleMesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.triangles_ = std::move(triangles);
  for (std::size_t t = 0; t < mesh.triangles_.size(); ++t) {
    mesh.surface_area_ += mesh.triangle_area(t);
  }
  if (!(mesh.surface_area_ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mesh has zero surface area");
  }
  for (const Triangle& tri : mesh.triangles_) {
    for (std::uint32_t idx : tri) mesh.bounds_.extend(mesh.vertices_[idx]);
  }

  // Each directed edge must appear once and be matched by its reverse.
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
  bool ok = true;
  for (const Triangle& tri : mesh.triangles_) {
    for (int e = 0; e < 3; ++e) {
      auto key = std::make_pair(tri[e], tri[(e + 1) % 3]);
      if (key.first == key.second || ++directed[key] > 1) ok = false;
    }
  }
  if (ok) {
    for (const auto& [edge, count] : directed) {
      if (directed.find({edge.second, edge.first}) == directed.end()) {
        ok = false;
        break;
      }
    }
  }
  mesh.watertight_ = ok;
  return mesh;
}

double TriangleMesh::triangle_area(std::size_t t) const {
  const Triangle& tri = triangles_[t];
  const Vec3& a = vertices_[tri[0]];
  return 0.5 * (vertices_[tri[1]] - a).cross(vertices_[tri[2]] - a).norm();
}

Vec3 TriangleMesh::triangle_normal(std::size_t t) const {
  const Triangle& tri = triangles_[t];
  const Vec3& a = vertices_[tri[0]];
  const Vec3 n = (vertices_[tri[1]] - a).cross(vertices_[tri[2]] - a);
  const double len = n.norm();
  return len > 0.0 ? Vec3(n / len) : Vec3::Zero();
}

TriangleMesh TriangleMesh::scaled(double factor) const {
  std::vector<Vec3> v = vertices_;
  for (Vec3& p : v) p *= factor;
  return create(std::move(v), triangles_);
}

TriangleMesh TriangleMesh::translated(const Vec3& offset) const {
  std::vector<Vec3> v = vertices_;
  for (Vec3& p : v) p += offset;
  return create(std::move(v), triangles_);
}

ClosestPointResult closest_point_on_triangle(const Vec3& p, const Vec3& a,
                                             const Vec3& b, const Vec3& c) {
  auto result = [&p](const Vec3& q, ClosestFeature f) {
    return ClosestPointResult{q, (p - q).squaredNorm(), f};
  };
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return result(a, ClosestFeature::kVertex0);

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return result(b, ClosestFeature::kVertex1);

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double den = d1 - d3;
    const double v = den > 0.0 ? d1 / den : 0.0;
    return result(a + v * ab, ClosestFeature::kEdge01);
  }

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return result(c, ClosestFeature::kVertex2);

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double den = d2 - d6;
    const double w = den > 0.0 ? d2 / den : 0.0;
    return result(a + w * ac, ClosestFeature::kEdge20);
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double den = (d4 - d3) + (d5 - d6);
    const double w = den > 0.0 ? (d4 - d3) / den : 0.0;
    return result(b + w * (c - b), ClosestFeature::kEdge12);
  }

  const double sum = va + vb + vc;
  if (!(sum > 0.0)) return result(a, ClosestFeature::kVertex0);
  const double v = vb / sum;
  const double w = vc / sum;
  return result(a + ab * v + ac * w, ClosestFeature::kFace);
}

MeshDistance::MeshDistance(std::shared_ptr<const TriangleMesh> mesh)
    : mesh_(std::move(mesh)) {
  const auto& tris = mesh_->triangles();
  const auto& verts = mesh_->vertices();
  const std::size_t nt = tris.size();

  face_normals_.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) face_normals_[t] = mesh_->triangle_normal(t);

  vertex_normals_.assign(verts.size(), Vec3::Zero());
  std::map<std::pair<std::uint32_t, std::uint32_t>, Vec3> edge_sum;
  for (std::size_t t = 0; t < nt; ++t) {
    const Triangle& tri = tris[t];
    for (int k = 0; k < 3; ++k) {
      const Vec3& v = verts[tri[k]];
      const Vec3 e1 = verts[tri[(k + 1) % 3]] - v;
      const Vec3 e2 = verts[tri[(k + 2) % 3]] - v;
      const double denom = e1.norm() * e2.norm();
      if (denom > 0.0) {
        const double angle = std::acos(std::clamp(e1.dot(e2) / denom, -1.0, 1.0));
        vertex_normals_[tri[k]] += angle * face_normals_[t];
      }
      const auto key = std::minmax(tri[k], tri[(k + 1) % 3]);
      edge_sum.try_emplace({key.first, key.second}, Vec3::Zero()).first->second +=
          face_normals_[t];
    }
  }
  edge_normals_.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const Triangle& tri = tris[t];
    for (int k = 0; k < 3; ++k) {
      const auto key = std::minmax(tri[k], tri[(k + 1) % 3]);
      edge_normals_[t][k] = edge_sum.at({key.first, key.second});
    }
  }

  order_.resize(nt);
  std::iota(order_.begin(), order_.end(), 0u);
  nodes_.reserve(2 * nt);
  build(0, static_cast<std::uint32_t>(nt));
}

std::uint32_t MeshDistance::build(std::uint32_t first, std::uint32_t count) {
  const auto& tris = mesh_->triangles();
  const auto& verts = mesh_->vertices();
  const std::uint32_t index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();

  Aabb box;
  Aabb centroid_box;
  for (std::uint32_t i = first; i < first + count; ++i) {
    const Triangle& tri = tris[order_[i]];
    Vec3 centroid = Vec3::Zero();
    for (std::uint32_t v : tri) {
      box.extend(verts[v]);
      centroid += verts[v];
    }
    centroid_box.extend(Vec3(centroid / 3.0));
  }
  nodes_[index].box = box;

  constexpr std::uint32_t kLeafSize = 4;
  const Vec3 spread = centroid_box.extent();
  if (count <= kLeafSize || spread.maxCoeff() <= 0.0) {
    nodes_[index].first = first;
    nodes_[index].count = count;
    return index;
  }

  int axis = 0;
  spread.maxCoeff(&axis);
  auto centroid_of = [&](std::uint32_t t) {
    const Triangle& tri = tris[t];
    return verts[tri[0]][axis] + verts[tri[1]][axis] + verts[tri[2]][axis];
  };
  const std::uint32_t half = count / 2;
  std::nth_element(order_.begin() + first, order_.begin() + first + half,
                   order_.begin() + first + count,
                   [&](std::uint32_t a, std::uint32_t b) {
                     const double ca = centroid_of(a);
                     const double cb = centroid_of(b);
                     return ca < cb || (ca == cb && a < b);
                   });
  const std::uint32_t left = build(first, half);
  const std::uint32_t right = build(first + half, count - half);
  nodes_[index].left = left;
  nodes_[index].right = right;
  return index;
}

void MeshDistance::search(const Vec3& p, NearestHit& best) const {
  const auto& tris = mesh_->triangles();
  const auto& verts = mesh_->vertices();
  std::uint32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (node.box.squared_distance(p) > best.distance2) continue;
    if (node.count > 0) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        const std::uint32_t t = order_[i];
        const Triangle& tri = tris[t];
        const ClosestPointResult r =
            closest_point_on_triangle(p, verts[tri[0]], verts[tri[1]], verts[tri[2]]);
        if (r.distance2 < best.distance2 ||
            (r.distance2 == best.distance2 && t < best.triangle)) {
          best.distance2 = r.distance2;
          best.point = r.point;
          best.triangle = t;
          best.feature = r.feature;
        }
      }
      continue;
    }
    // Push the farther child first so the nearer one is searched next.
    const double dl = nodes_[node.left].box.squared_distance(p);
    const double dr = nodes_[node.right].box.squared_distance(p);
    if (dl <= dr) {
      stack[top++] = node.right;
      stack[top++] = node.left;
    } else {
      stack[top++] = node.left;
      stack[top++] = node.right;
    }
  }
}

NearestHit MeshDistance::nearest(const Vec3& p) const {
  NearestHit best;
  best.triangle = std::numeric_limits<std::uint32_t>::max();
  search(p, best);
  return best;
}

NearestHit MeshDistance::nearest(const Vec3& p, std::uint32_t hint) const {
  NearestHit best;
  best.triangle = std::numeric_limits<std::uint32_t>::max();
  if (hint < mesh_->triangles().size()) {
    const Triangle& tri = mesh_->triangles()[hint];
    const auto& verts = mesh_->vertices();
    const ClosestPointResult r =
        closest_point_on_triangle(p, verts[tri[0]], verts[tri[1]], verts[tri[2]]);
    // The hint only bounds the search; ties are resolved by the full search
    // so the result does not depend on the hint.
    best.distance2 = std::nextafter(r.distance2, std::numeric_limits<double>::infinity());
  }
  search(p, best);
  return best;
}

double MeshDistance::sign_of(const Vec3& p, const NearestHit& hit) const {
  const Vec3 diff = p - hit.point;
  Vec3 normal = face_normals_[hit.triangle];
  if (mesh_->watertight()) {
    const Triangle& tri = mesh_->triangles()[hit.triangle];
    switch (hit.feature) {
      case ClosestFeature::kVertex0: normal = vertex_normals_[tri[0]]; break;
      case ClosestFeature::kVertex1: normal = vertex_normals_[tri[1]]; break;
      case ClosestFeature::kVertex2: normal = vertex_normals_[tri[2]]; break;
      case ClosestFeature::kEdge01: normal = edge_normals_[hit.triangle][0]; break;
      case ClosestFeature::kEdge12: normal = edge_normals_[hit.triangle][1]; break;
      case ClosestFeature::kEdge20: normal = edge_normals_[hit.triangle][2]; break;
      case ClosestFeature::kFace: break;
    }
  }
  return diff.dot(normal) < 0.0 ? -1.0 : 1.0;
}

double MeshDistance::signed_distance(const Vec3& p) const {
  const NearestHit hit = nearest(p);
  if (hit.distance2 == 0.0) return 0.0;
  return sign_of(p, hit) * std::sqrt(hit.distance2);
}

double MeshDistance::signed_distance(const Vec3& p, std::uint32_t* hint) const {
  const NearestHit hit = hint != nullptr ? nearest(p, *hint) : nearest(p);
  if (hint != nullptr) *hint = hit.triangle;
  if (hit.distance2 == 0.0) return 0.0;
  return sign_of(p, hit) * std::sqrt(hit.distance2);
}

Workspace make_workspace(const TriangleMesh& mesh, double inflation,
                         double sensor_length) {
  if (!(inflation >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "workspace inflation must be >= 0");
  }
  if (!(sensor_length > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sensor length must be > 0");
  }
  const Aabb& box = mesh.bounds();
  const double margin = inflation * box.extent().norm() + sensor_length;
  Workspace ws;
  ws.min_corner = box.min.array() - margin;
  ws.max_corner = box.max.array() + margin;
  for (int axis = 0; axis < 3; ++axis) {
    if (box.extent()[axis] <= 0.0) {
      ws.min_corner[axis] -= sensor_length;
      ws.max_corner[axis] += sensor_length;
    }
  }
  ws.center = box.center();
  return ws;
}

SurfaceSampleSet sample_surface(const TriangleMesh& mesh, std::size_t n,
                                std::uint64_t seed) {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample count must be >= 1");
  }
  const auto& tris = mesh.triangles();
  const auto& verts = mesh.vertices();
  std::vector<double> cumulative(tris.size());
  double total = 0.0;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    total += mesh.triangle_area(t);
    cumulative[t] = total;
  }

  Rng rng(seed);
  SurfaceSampleSet out;
  out.points.reserve(n);
  out.triangle.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pick = uniform01(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
    if (it == cumulative.end()) --it;
    // Skip zero-area triangles that share a cumulative value with the next.
    while (mesh.triangle_area(static_cast<std::size_t>(it - cumulative.begin())) == 0.0 &&
           it + 1 != cumulative.end()) {
      ++it;
    }
    const auto t = static_cast<std::uint32_t>(it - cumulative.begin());
    const double r1 = std::sqrt(uniform01(rng));
    const double r2 = uniform01(rng);
    const Triangle& tri = tris[t];
    out.points.push_back((1.0 - r1) * verts[tri[0]] + r1 * (1.0 - r2) * verts[tri[1]] +
                         r1 * r2 * verts[tri[2]]);
    out.triangle.push_back(t);
  }
  return out;
}

}  // namespace tactex
