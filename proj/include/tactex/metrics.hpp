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

#include <span>
#include <vector>

#include "tactex/geometry.hpp"

namespace tactex {

using PointCloud = std::vector<Vec3>;

// Fraction of ground-truth points with an observed point within delta.
double surface_iou(std::span<const Vec3> gt, std::span<const Vec3> observed, double delta);

// Mean of the two directed mean nearest-neighbor Euclidean distances.
double chamfer_l1(std::span<const Vec3> a, std::span<const Vec3> b);

// Mean nearest-neighbor distance from each point of `from` to `to`.
double directed_mean_distance(std::span<const Vec3> from, std::span<const Vec3> to);

}  // namespace tactex
