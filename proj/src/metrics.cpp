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

#include "tactex/metrics.hpp"

#include <cmath>

#include "tactex/error.hpp"
#include "tactex/point_grid.hpp"

namespace tactex {

double surface_iou(std::span<const Vec3> gt, std::span<const Vec3> observed, double delta) {
  if (gt.empty()) throw Error(ErrorCode::kInvalidArgument, "surface IoU needs ground-truth points");
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "IoU delta must be > 0");
  if (observed.empty()) return 0.0;
  const PointGrid grid(observed, delta);
  const double r2 = delta * delta;
  std::size_t covered = 0;
  for (const Vec3& p : gt) {
    if (grid.any_within(p, r2)) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(gt.size());
}

double directed_mean_distance(std::span<const Vec3> from, std::span<const Vec3> to) {
  if (from.empty() || to.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "chamfer distance needs non-empty clouds");
  }
  const PointGrid grid(to, PointGrid::suggest_cell(to));
  double sum = 0.0;
  for (const Vec3& p : from) sum += std::sqrt(grid.nearest_distance2(p));
  return sum / static_cast<double>(from.size());
}

double chamfer_l1(std::span<const Vec3> a, std::span<const Vec3> b) {
  return 0.5 * directed_mean_distance(a, b) + 0.5 * directed_mean_distance(b, a);
}

}  // namespace tactex
