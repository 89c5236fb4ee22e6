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

// Brute-force reference implementations. These are deliberately naive and
// share no code with the library's accelerated paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "tactex/geometry.hpp"
#include "tactex/pose.hpp"
#include "tactex/random.hpp"

namespace oracle {

using tactex::Vec3;

// Closest point on a triangle by projecting onto the plane and, when the
// projection falls outside, taking the best of the three edge segments.
inline Vec3 closest_on_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return a;
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

inline Vec3 closest_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = (b - a).cross(c - a);
  const double n2 = n.squaredNorm();
  if (n2 > 0.0) {
    const Vec3 proj = p - n * ((p - a).dot(n) / n2);
    const double u = (b - proj).cross(c - proj).dot(n);
    const double v = (c - proj).cross(a - proj).dot(n);
    const double w = (a - proj).cross(b - proj).dot(n);
    if (u >= 0.0 && v >= 0.0 && w >= 0.0) return proj;
  }
  Vec3 best = closest_on_segment(p, a, b);
  for (const Vec3& q : {closest_on_segment(p, b, c), closest_on_segment(p, c, a)}) {
    if ((q - p).squaredNorm() < (best - p).squaredNorm()) best = q;
  }
  return best;
}

inline double unsigned_distance(const tactex::TriangleMesh& mesh, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : mesh.triangles()) {
    const Vec3 q = closest_on_triangle(p, mesh.vertices()[t[0]], mesh.vertices()[t[1]],
                                       mesh.vertices()[t[2]]);
    best = std::min(best, (q - p).squaredNorm());
  }
  return std::sqrt(best);
}

// Inside test by ray parity along an irrational-ish direction; valid for
// closed meshes away from the surface.
inline bool inside(const tactex::TriangleMesh& mesh, const Vec3& p) {
  const Vec3 dir = Vec3(0.5773, 0.5802, 0.5743).normalized();
  int hits = 0;
  for (const auto& t : mesh.triangles()) {
    const Vec3& a = mesh.vertices()[t[0]];
    const Vec3& b = mesh.vertices()[t[1]];
    const Vec3& c = mesh.vertices()[t[2]];
    // Moller-Trumbore
    const Vec3 e1 = b - a, e2 = c - a;
    const Vec3 h = dir.cross(e2);
    const double det = e1.dot(h);
    if (std::abs(det) < 1e-18) continue;
    const double f = 1.0 / det;
    const Vec3 s = p - a;
    const double u = f * s.dot(h);
    if (u < 0.0 || u > 1.0) continue;
    const Vec3 q = s.cross(e1);
    const double v = f * dir.dot(q);
    if (v < 0.0 || u + v > 1.0) continue;
    if (f * e2.dot(q) > 0.0) ++hits;
  }
  return hits % 2 == 1;
}

inline double signed_distance(const tactex::TriangleMesh& mesh, const Vec3& p) {
  const double d = unsigned_distance(mesh, p);
  return inside(mesh, p) ? -d : d;
}

inline double nearest2(const std::vector<Vec3>& cloud, const Vec3& q) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& c : cloud) best = std::min(best, (c - q).squaredNorm());
  return best;
}

inline double iou(const std::vector<Vec3>& gt, const std::vector<Vec3>& obs, double delta) {
  std::size_t covered = 0;
  for (const Vec3& g : gt) {
    for (const Vec3& o : obs) {
      if ((g - o).norm() <= delta) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(gt.size());
}

inline double directed(const std::vector<Vec3>& from, const std::vector<Vec3>& to) {
  double sum = 0.0;
  for (const Vec3& p : from) sum += std::sqrt(nearest2(to, p));
  return sum / static_cast<double>(from.size());
}

inline double chamfer(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  return 0.5 * directed(a, b) + 0.5 * directed(b, a);
}

inline bool close_pose(const tactex::SensorPose& a, const tactex::SensorPose& b, double trans,
                       double rot) {
  if ((a.translation - b.translation).norm() > trans) return false;
  const double d = std::abs(a.rotation.coeffs().dot(b.rotation.coeffs()));
  return std::acos(std::min(1.0, d)) <= rot;
}

// Reward with touch recovery first, then revisit, then contact; written out case by case.
inline double reward(double r_a, bool touch_recovery, bool revisit, double n_hat, int mode) {
  if (touch_recovery) return -0.2;
  if (revisit) return -0.03;
  if (r_a <= 0.0) return 0.0;
  if (mode == 0) return 1.0;               // TM
  if (mode == 1) return r_a;               // AM
  return 0.15 * r_a + 0.85 / std::sqrt(n_hat);  // AMB
}

// A_t = sum_{j >= t} (gamma lambda)^{j - t} delta_j, stopping after the
// first done at or past t.
inline std::vector<double> advantages(const std::vector<double>& r, const std::vector<double>& v,
                                      const std::vector<std::uint8_t>& done, double bootstrap,
                                      double gamma, double lambda) {
  const std::size_t n = r.size();
  std::vector<double> delta(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double next = t + 1 < n ? v[t + 1] : bootstrap;
    delta[t] = r[t] + (done[t] ? 0.0 : gamma * next) - v[t];
  }
  std::vector<double> adv(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double w = 1.0;
    for (std::size_t j = t; j < n; ++j) {
      adv[t] += w * delta[j];
      if (done[j]) break;
      w *= gamma * lambda;
    }
  }
  return adv;
}

inline tactex::SensorPose random_pose(tactex::Rng& rng, double extent) {
  tactex::SensorPose p;
  p.translation = Vec3(tactex::uniform(rng, -extent, extent), tactex::uniform(rng, -extent, extent),
                       tactex::uniform(rng, -extent, extent));
  Eigen::Vector4d q(tactex::uniform(rng, -1, 1), tactex::uniform(rng, -1, 1),
                    tactex::uniform(rng, -1, 1), tactex::uniform(rng, -1, 1));
  q.normalize();
  p.rotation = Eigen::Quaterniond(q[0], q[1], q[2], q[3]);
  return p;
}

}  // namespace oracle
