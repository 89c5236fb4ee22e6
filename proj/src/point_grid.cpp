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

#include "tactex/point_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tactex/error.hpp"
#include "tactex/simd/kernels.hpp"

namespace tactex {

PointGrid::PointGrid(std::span<const Vec3> points, double cell_size)
    : cell_(cell_size * (1.0 + 1e-9)) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw Error(ErrorCode::kInvalidArgument, "grid cell size must be positive");
  }
  const std::size_t n = points.size();
  std::vector<std::uint64_t> keys(n);
  lo_.fill(std::numeric_limits<std::int64_t>::max());
  hi_.fill(std::numeric_limits<std::int64_t>::min());
  for (std::size_t i = 0; i < n; ++i) {
    if (!points[i].allFinite()) {
      throw Error(ErrorCode::kInvalidArgument, "point cloud has a non-finite coordinate");
    }
    const auto c = cell_of(points[i]);
    keys[i] = key(c[0], c[1], c[2]);
    for (int k = 0; k < 3; ++k) {
      lo_[k] = std::min(lo_[k], c[k]);
      hi_[k] = std::max(hi_[k], c[k]);
    }
  }
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
  xs_.resize(n);
  ys_.resize(n);
  zs_.resize(n);
  index_.resize(n);
  for (std::size_t slot = 0; slot < n; ++slot) {
    const std::uint32_t i = order[slot];
    xs_[slot] = points[i].x();
    ys_[slot] = points[i].y();
    zs_[slot] = points[i].z();
    index_[slot] = i;
    Cell& cell = cells_[keys[i]];
    if (cell.count == 0) cell.start = static_cast<std::uint32_t>(slot);
    ++cell.count;
    ++cell.live;
  }
}

double PointGrid::suggest_cell(std::span<const Vec3> points) {
  if (points.empty()) return 1.0;
  Aabb box;
  for (const Vec3& p : points) box.extend(p);
  const double extent = box.extent().maxCoeff();
  if (!(extent > 0.0)) return 1.0;
  return std::max(extent / std::cbrt(static_cast<double>(points.size())), extent * 1e-6);
}

std::array<std::int64_t, 3> PointGrid::cell_of(const Vec3& p) const {
  return {static_cast<std::int64_t>(std::floor(p.x() / cell_)),
          static_cast<std::int64_t>(std::floor(p.y() / cell_)),
          static_cast<std::int64_t>(std::floor(p.z() / cell_))};
}

std::uint64_t PointGrid::key(std::int64_t ix, std::int64_t iy, std::int64_t iz) {
  constexpr std::int64_t kBias = 1 << 20;
  constexpr std::uint64_t kMask = (1u << 21) - 1;
  return (static_cast<std::uint64_t>(ix + kBias) & kMask) |
         ((static_cast<std::uint64_t>(iy + kBias) & kMask) << 21) |
         ((static_cast<std::uint64_t>(iz + kBias) & kMask) << 42);
}

const PointGrid::Cell* PointGrid::find(std::int64_t ix, std::int64_t iy,
                                       std::int64_t iz) const {
  if (ix < lo_[0] || ix > hi_[0] || iy < lo_[1] || iy > hi_[1] || iz < lo_[2] ||
      iz > hi_[2]) {
    return nullptr;
  }
  auto it = cells_.find(key(ix, iy, iz));
  return it == cells_.end() ? nullptr : &it->second;
}

bool PointGrid::any_within(const Vec3& q, double r2) const {
  const auto c = cell_of(q);
  const double qa[3] = {q.x(), q.y(), q.z()};
  const auto& kern = simd::kernels();
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dz = -1; dz <= 1; ++dz) {
        const Cell* cell = find(c[0] + dx, c[1] + dy, c[2] + dz);
        if (cell == nullptr || cell->live == 0) continue;
        const std::size_t s = cell->start;
        if (kern.first_within(qa, &xs_[s], &ys_[s], &zs_[s], cell->live, r2) < cell->live) {
          return true;
        }
      }
    }
  }
  return false;
}

double PointGrid::brute_nearest2(const Vec3& q) const {
  const double qa[3] = {q.x(), q.y(), q.z()};
  double best = std::numeric_limits<double>::infinity();
  const auto& kern = simd::kernels();
  for (const auto& [k, cell] : cells_) {
    if (cell.live == 0) continue;
    const std::size_t s = cell.start;
    best = std::min(best, kern.min_dist2(qa, &xs_[s], &ys_[s], &zs_[s], cell.live));
  }
  return best;
}

double PointGrid::nearest_distance2(const Vec3& q) const {
  if (xs_.empty()) return std::numeric_limits<double>::infinity();
  const auto c = cell_of(q);
  const double qa[3] = {q.x(), q.y(), q.z()};
  const auto& kern = simd::kernels();

  // First ring that can contain occupied cells, and the last one needed.
  std::int64_t r0 = 0;
  std::int64_t r_max = 0;
  for (int k = 0; k < 3; ++k) {
    r0 = std::max({r0, lo_[k] - c[k], c[k] - hi_[k]});
    r_max = std::max({r_max, hi_[k] - c[k], c[k] - lo_[k]});
  }

  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t r = r0; r <= r_max; ++r) {
    // A point in ring r + 1 or beyond is at least r cells away.
    const double shell = static_cast<double>(r) * cell_;
    const double side = static_cast<double>(2 * r + 1);
    if (side * side * side > 8.0 * static_cast<double>(xs_.size() + 64)) {
      return std::min(best, brute_nearest2(q));
    }
    for (std::int64_t dx = -r; dx <= r; ++dx) {
      for (std::int64_t dy = -r; dy <= r; ++dy) {
        const bool face = std::abs(dx) == r || std::abs(dy) == r;
        for (std::int64_t dz = -r; dz <= r; dz += (face ? 1 : 2 * std::max<std::int64_t>(r, 1))) {
          const Cell* cell = find(c[0] + dx, c[1] + dy, c[2] + dz);
          if (cell != nullptr && cell->live > 0) {
            const std::size_t s = cell->start;
            best = std::min(best, kern.min_dist2(qa, &xs_[s], &ys_[s], &zs_[s], cell->live));
          }
          if (r == 0) break;
        }
      }
    }
    if (best <= shell * shell) return best;
  }
  return best;
}

void PointGrid::consume_within(const Vec3& q, double r2, std::vector<std::uint32_t>& out) {
  const auto c = cell_of(q);
  const double qa[3] = {q.x(), q.y(), q.z()};
  const auto& kern = simd::kernels();
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dz = -1; dz <= 1; ++dz) {
        Cell* cell = find(c[0] + dx, c[1] + dy, c[2] + dz);
        if (cell == nullptr) continue;
        std::size_t pos = 0;
        while (pos < cell->live) {
          const std::size_t s = cell->start + pos;
          const std::size_t hit =
              kern.first_within(qa, &xs_[s], &ys_[s], &zs_[s], cell->live - pos, r2);
          if (hit >= cell->live - pos) break;
          pos += hit;
          const std::size_t a = cell->start + pos;
          const std::size_t b = cell->start + cell->live - 1;
          out.push_back(index_[a]);
          std::swap(xs_[a], xs_[b]);
          std::swap(ys_[a], ys_[b]);
          std::swap(zs_[a], zs_[b]);
          std::swap(index_[a], index_[b]);
          --cell->live;
        }
      }
    }
  }
}

}  // namespace tactex
