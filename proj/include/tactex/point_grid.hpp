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
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tactex/geometry.hpp"

namespace tactex {

// Uniform hashed grid over a fixed point set, stored cell by cell as
// structure-of-arrays so the distance kernels stream over contiguous memory.
//
// Points inside a cell are split into a live prefix and a consumed suffix;
// `consume_within` moves matches out of the live prefix so repeated coverage
// queries skip points that are already accounted for. All other queries see
// only live points.
class PointGrid {
 public:
  PointGrid(std::span<const Vec3> points, double cell_size);

  // Cell edge suited to nearest-neighbor queries on n surface-like points.
  static double suggest_cell(std::span<const Vec3> points);

  double cell_size() const { return cell_; }
  std::size_t size() const { return xs_.size(); }

  // True if a live point lies within sqrt(r2) of q. Requires r <= cell size.
  bool any_within(const Vec3& q, double r2) const;

  // Squared distance to the nearest live point (+inf when none).
  double nearest_distance2(const Vec3& q) const;

  // Removes every live point within sqrt(r2) of q (r <= cell size) and
  // appends the original indices of the removed points to `out`.
  void consume_within(const Vec3& q, double r2, std::vector<std::uint32_t>& out);

 private:
  struct Cell {
    std::uint32_t start = 0;
    std::uint32_t count = 0;
    std::uint32_t live = 0;
  };

  std::array<std::int64_t, 3> cell_of(const Vec3& p) const;
  static std::uint64_t key(std::int64_t ix, std::int64_t iy, std::int64_t iz);
  const Cell* find(std::int64_t ix, std::int64_t iy, std::int64_t iz) const;
  Cell* find(std::int64_t ix, std::int64_t iy, std::int64_t iz) {
    return const_cast<Cell*>(std::as_const(*this).find(ix, iy, iz));
  }
  double brute_nearest2(const Vec3& q) const;

  double cell_;
  std::vector<double> xs_, ys_, zs_;
  std::vector<std::uint32_t> index_;  // original point index per slot
  std::unordered_map<std::uint64_t, Cell> cells_;
  std::array<std::int64_t, 3> lo_{}, hi_{};  // occupied cell bounds
};

}  // namespace tactex
