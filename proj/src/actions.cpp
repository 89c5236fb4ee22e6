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

#include "tactex/actions.hpp"

#include <numbers>

#include "tactex/error.hpp"

namespace tactex {

std::string Action::name() const {
  static constexpr const char* kTranslateNames[] = {"x", "y", "z"};
  static constexpr const char* kRotateNames[] = {"roll", "pitch", "yaw"};
  if (kind == ActionKind::kTouchRecovery) return "touch_recovery";
  const char* axis_name = kind == ActionKind::kTranslate ? kTranslateNames[axis]
                                                         : kRotateNames[axis];
  return std::string(sign > 0 ? "+" : "-") + axis_name;
}

const std::array<Action, kNumActions>& enumerate_actions() {
  static const std::array<Action, kNumActions> actions = [] {
    std::array<Action, kNumActions> a{};
    int i = 0;
    for (ActionKind kind : {ActionKind::kTranslate, ActionKind::kRotate}) {
      for (int axis = 0; axis < 3; ++axis) {
        a[i++] = Action{kind, axis, +1};
        a[i++] = Action{kind, axis, -1};
      }
    }
    a[kTouchRecoveryIndex] = Action{ActionKind::kTouchRecovery, 0, 1};
    return a;
  }();
  return actions;
}

int action_index(const Action& a) {
  if (a.kind == ActionKind::kTouchRecovery) return kTouchRecoveryIndex;
  const int base = a.kind == ActionKind::kTranslate ? 0 : 6;
  return base + 2 * a.axis + (a.sign > 0 ? 0 : 1);
}

const Action& action_at(int index) {
  if (index < 0 || index >= kNumActions) {
    throw Error(ErrorCode::kInvalidArgument, "action index out of range");
  }
  return enumerate_actions()[index];
}

void ActionParams::validate() const {
  if (!(translation_step > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "translation step must be > 0");
  }
  if (!(rotation_step > 0.0 && rotation_step < std::numbers::pi)) {
    throw Error(ErrorCode::kInvalidConfig, "rotation step must be in (0, pi)");
  }
}

SensorPose apply_action(const SensorPose& pose, const Action& a,
                        const ActionParams& params,
                        const std::optional<SensorPose>& last_touch) {
  switch (a.kind) {
    case ActionKind::kTouchRecovery:
      if (!last_touch) {
        throw Error(ErrorCode::kNoTouchPose, "touch recovery without a prior touch");
      }
      return *last_touch;
    case ActionKind::kTranslate: {
      SensorPose out = pose;
      out.translation[a.axis] += a.sign * params.translation_step;
      return out;
    }
    case ActionKind::kRotate: {
      SensorPose out = pose;
      const Eigen::AngleAxisd turn(a.sign * params.rotation_step,
                                   Eigen::Vector3d::Unit(a.axis));
      out.rotation = (Eigen::Quaterniond(turn) * pose.rotation).normalized();
      return out;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "bad action kind");
}

}  // namespace tactex
