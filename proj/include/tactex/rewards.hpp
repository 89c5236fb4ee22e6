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

#include <cstddef>
#include <cstdint>
#include <deque>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tactex/actions.hpp"
#include "tactex/pose.hpp"

namespace tactex {

// TM: touch indicator + memory, AM: contact area + memory,
// AMB: contact area + memory + count-based bonus.
enum class RewardMode { kTm, kAm, kAmb };

std::string_view reward_mode_name(RewardMode mode);
RewardMode parse_reward_mode(std::string_view name);

struct RewardParams {
  double alpha = 0.15;
  double beta = 0.85;
  double p_rev = -0.03;
  double p_tr = -0.2;
  std::size_t memory_size = 20;
  double trans_thresh = 0.008;               // 2 translation steps
  double rot_thresh = 1.0471975511965976;    // 4 rotation steps
  double revisit_radius = 0.002;             // half a translation step
  // Rotation tolerance for the revisit test; negative ignores rotation.
  double revisit_rot_thresh = -1.0;

  void validate() const;
};

// arccos(min(1, |<q1, q2>|)); the absolute value identifies q and -q.
double quaternion_gap(const Eigen::Quaterniond& q1, const Eigen::Quaterniond& q2);

bool close_pose(const SensorPose& p1, const SensorPose& p2, double trans_thresh,
                double rot_thresh);

// Per-episode (pose, action) visit records with a uniform grid over
// translations (cell edge = trans_thresh) so a count query only inspects the
// 27 cells around the query.
class VisitCountStore {
 public:
  VisitCountStore(double trans_thresh, double rot_thresh);

  void record(const SensorPose& pose, int action);
  std::size_t count(const SensorPose& pose, int action) const;
  void clear();

  std::size_t size() const { return poses_.size(); }
  const std::vector<SensorPose>& poses() const { return poses_; }
  const std::vector<int>& actions() const { return actions_; }
  double trans_thresh() const { return trans_thresh_; }
  double rot_thresh() const { return rot_thresh_; }

 private:
  std::uint64_t cell_key(int ix, int iy, int iz) const;
  std::array<int, 3> cell_of(const Eigen::Vector3d& t) const;

  double trans_thresh_;
  double rot_thresh_;
  double cell_;
  std::vector<SensorPose> poses_;
  std::vector<int> actions_;
  std::array<std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>, kNumActions>
      grid_;
};

// FIFO of the m most recent poses.
class ShortTermMemory {
 public:
  explicit ShortTermMemory(std::size_t capacity);

  void push(const SensorPose& pose);
  bool contains(const SensorPose& pose, double radius, double rot_thresh = -1.0) const;
  void clear() { poses_.clear(); }

  std::size_t size() const { return poses_.size(); }
  std::size_t capacity() const { return capacity_; }
  const std::deque<SensorPose>& poses() const { return poses_; }

 private:
  std::size_t capacity_;
  std::deque<SensorPose> poses_;
};

// Reward for one transition. Precedence: touch recovery, then revisit,
// then the contact branch. `visit_count` must already include the current
// step and is only read in the AMB contact branch.
double reward_value(double contact, const Action& a, bool revisit,
                    std::size_t visit_count, const RewardParams& params,
                    RewardMode mode);

double compute_reward(double contact, const Action& a, const SensorPose& pose,
                      const SensorPose& next_pose, const VisitCountStore& store,
                      const ShortTermMemory& memory, const RewardParams& params,
                      RewardMode mode);

void record_step(VisitCountStore& store, ShortTermMemory& memory,
                 const SensorPose& pose, const Action& a, const SensorPose& next_pose);

}  // namespace tactex
