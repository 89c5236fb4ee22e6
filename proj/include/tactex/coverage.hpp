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

#include <cstdint>
#include <span>
#include <vector>

#include "tactex/geometry.hpp"
#include "tactex/point_grid.hpp"

namespace tactex {

// Ground-truth surface samples with covered flags, plus the accumulated
// observed cloud. A sample is covered once some observed point lies within
// `delta` of it; covered samples never revert within an episode.
class CoverageMap {
 public:
  CoverageMap(std::vector<Vec3> gt_samples, double delta, bool keep_observed = true);

  // Marks samples within delta of any new point; returns how many changed.
  std::size_t update(std::span<const Vec3> new_points);
  void reset();

  double iou() const;
  std::size_t covered_count() const { return covered_count_; }
  std::size_t sample_count() const { return gt_.size(); }
  double delta() const { return delta_; }

  const std::vector<Vec3>& gt_samples() const { return gt_; }
  const std::vector<std::uint8_t>& covered() const { return covered_; }
  const std::vector<Vec3>& observed() const { return observed_; }

 private:
  std::vector<Vec3> gt_;
  double delta_;
  bool keep_observed_;
  PointGrid grid_;
  std::vector<std::uint8_t> covered_;
  std::size_t covered_count_ = 0;
  std::vector<Vec3> observed_;
  std::vector<std::uint32_t> scratch_;
};

std::size_t coverage_update(CoverageMap& map, std::span<const Vec3> new_points);

}  // namespace tactex
