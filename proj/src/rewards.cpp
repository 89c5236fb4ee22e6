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

#include "tactex/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tactex/error.hpp"

namespace tactex {

std::string_view reward_mode_name(RewardMode mode) {
  switch (mode) {
    case RewardMode::kTm:
      return "tm";
    case RewardMode::kAm:
      return "am";
    case RewardMode::kAmb:
      return "amb";
  }
  return "unknown";
}

RewardMode parse_reward_mode(std::string_view name) {
  if (name == "tm") return RewardMode::kTm;
  if (name == "am") return RewardMode::kAm;
  if (name == "amb") return RewardMode::kAmb;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown reward mode '" + std::string(name) + "' (expected tm, am, amb)");
}

void RewardParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0) ||
      std::abs(alpha + beta - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidConfig, "reward alpha and beta must be in [0,1] and sum to 1");
  }
  if (!(p_rev < 0.0) || !(p_tr < 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "reward penalties must be negative");
  }
  if (memory_size < 1) throw Error(ErrorCode::kInvalidConfig, "memory size must be >= 1");
  if (!(trans_thresh > 0.0) || !(rot_thresh >= 0.0) || !(revisit_radius >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "reward thresholds must be positive");
  }
}

double quaternion_gap(const Eigen::Quaterniond& q1, const Eigen::Quaterniond& q2) {
  return std::acos(std::min(1.0, std::abs(q1.dot(q2))));
}

bool close_pose(const SensorPose& p1, const SensorPose& p2, double trans_thresh,
                double rot_thresh) {
  return (p1.translation - p2.translation).norm() <= trans_thresh &&
         quaternion_gap(p1.rotation, p2.rotation) <= rot_thresh;
}

VisitCountStore::VisitCountStore(double trans_thresh, double rot_thresh)
    : trans_thresh_(trans_thresh),
      rot_thresh_(rot_thresh),
      // Slightly larger than the threshold so rounding in t / cell can never
      // put two close poses more than one cell apart.
      cell_(trans_thresh * (1.0 + 1e-9)) {
  if (!(trans_thresh > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "visit store threshold must be > 0");
  }
}

std::array<int, 3> VisitCountStore::cell_of(const Eigen::Vector3d& t) const {
  return {static_cast<int>(std::floor(t.x() / cell_)),
          static_cast<int>(std::floor(t.y() / cell_)),
          static_cast<int>(std::floor(t.z() / cell_))};
}

std::uint64_t VisitCountStore::cell_key(int ix, int iy, int iz) const {
  constexpr std::int64_t kBias = 1 << 20;
  constexpr std::uint64_t kMask = (1u << 21) - 1;
  return (static_cast<std::uint64_t>(ix + kBias) & kMask) |
         ((static_cast<std::uint64_t>(iy + kBias) & kMask) << 21) |
         ((static_cast<std::uint64_t>(iz + kBias) & kMask) << 42);
}

void VisitCountStore::record(const SensorPose& pose, int action) {
  if (action < 0 || action >= kNumActions) {
    throw Error(ErrorCode::kInvalidArgument, "action index out of range");
  }
  const auto c = cell_of(pose.translation);
  grid_[action][cell_key(c[0], c[1], c[2])].push_back(
      static_cast<std::uint32_t>(poses_.size()));
  poses_.push_back(pose);
  actions_.push_back(action);
}

std::size_t VisitCountStore::count(const SensorPose& pose, int action) const {
  if (action < 0 || action >= kNumActions) return 0;
  const auto& cells = grid_[action];
  if (cells.empty()) return 0;
  const auto c = cell_of(pose.translation);
  std::size_t n = 0;
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dz = -1; dz <= 1; ++dz) {
        auto it = cells.find(cell_key(c[0] + dx, c[1] + dy, c[2] + dz));
        if (it == cells.end()) continue;
        for (std::uint32_t idx : it->second) {
          if (close_pose(pose, poses_[idx], trans_thresh_, rot_thresh_)) ++n;
        }
      }
    }
  }
  return n;
}

void VisitCountStore::clear() {
  poses_.clear();
  actions_.clear();
  for (auto& cells : grid_) cells.clear();
}

ShortTermMemory::ShortTermMemory(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw Error(ErrorCode::kInvalidArgument, "memory size must be >= 1");
}

void ShortTermMemory::push(const SensorPose& pose) {
  poses_.push_back(pose);
  while (poses_.size() > capacity_) poses_.pop_front();
}

bool ShortTermMemory::contains(const SensorPose& pose, double radius,
                               double rot_thresh) const {
  return std::any_of(poses_.begin(), poses_.end(), [&](const SensorPose& p) {
    if ((p.translation - pose.translation).norm() > radius) return false;
    return rot_thresh < 0.0 || quaternion_gap(p.rotation, pose.rotation) <= rot_thresh;
  });
}

double reward_value(double contact, const Action& a, bool revisit,
                    std::size_t visit_count, const RewardParams& params,
                    RewardMode mode) {
  if (a.kind == ActionKind::kTouchRecovery) return params.p_tr;
  if (revisit) return params.p_rev;
  if (!(contact > 0.0)) return 0.0;
  switch (mode) {
    case RewardMode::kTm:
      return 1.0;
    case RewardMode::kAm:
      return contact;
    case RewardMode::kAmb:
      if (visit_count == 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "exploration bonus needs the visit recorded before the reward");
      }
      return params.alpha * contact +
             params.beta / std::sqrt(static_cast<double>(visit_count));
  }
  return 0.0;
}

double compute_reward(double contact, const Action& a, const SensorPose& pose,
                      const SensorPose& next_pose, const VisitCountStore& store,
                      const ShortTermMemory& memory, const RewardParams& params,
                      RewardMode mode) {
  const bool revisit =
      memory.contains(next_pose, params.revisit_radius, params.revisit_rot_thresh);
  const std::size_t n =
      (mode == RewardMode::kAmb && contact > 0.0) ? store.count(pose, action_index(a)) : 0;
  return reward_value(contact, a, revisit, n, params, mode);
}

void record_step(VisitCountStore& store, ShortTermMemory& memory,
                 const SensorPose& pose, const Action& a, const SensorPose& next_pose) {
  store.record(pose, action_index(a));
  memory.push(next_pose);
}

}  // namespace tactex
