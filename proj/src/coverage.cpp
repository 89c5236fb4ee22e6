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

#include "tactex/coverage.hpp"

#include "tactex/error.hpp"

namespace tactex {

CoverageMap::CoverageMap(std::vector<Vec3> gt_samples, double delta, bool keep_observed)
    : gt_(std::move(gt_samples)),
      delta_(delta),
      keep_observed_(keep_observed),
      grid_(gt_, delta > 0.0 ? delta : 1.0),
      covered_(gt_.size(), 0) {
  if (gt_.empty()) throw Error(ErrorCode::kInvalidArgument, "coverage needs ground-truth samples");
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "coverage delta must be > 0");
}

std::size_t CoverageMap::update(std::span<const Vec3> new_points) {
  const double r2 = delta_ * delta_;
  scratch_.clear();
  for (const Vec3& p : new_points) grid_.consume_within(p, r2, scratch_);
  for (std::uint32_t idx : scratch_) covered_[idx] = 1;
  covered_count_ += scratch_.size();
  if (keep_observed_) observed_.insert(observed_.end(), new_points.begin(), new_points.end());
  return scratch_.size();
}

void CoverageMap::reset() {
  grid_ = PointGrid(gt_, delta_);
  std::fill(covered_.begin(), covered_.end(), 0);
  covered_count_ = 0;
  observed_.clear();
}

double CoverageMap::iou() const {
  return static_cast<double>(covered_count_) / static_cast<double>(gt_.size());
}

std::size_t coverage_update(CoverageMap& map, std::span<const Vec3> new_points) {
  return map.update(new_points);
}

}  // namespace tactex
