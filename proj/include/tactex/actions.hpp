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
#include <optional>
#include <string>

#include "tactex/pose.hpp"

namespace tactex {

enum class ActionKind { kTranslate, kRotate, kTouchRecovery };

// Axis 0..2 is x, y, z for translations and roll (about x), pitch (about y),
// yaw (about z) for rotations. All axes are workspace-frame axes.
struct Action {
  ActionKind kind = ActionKind::kTranslate;
  int axis = 0;
  int sign = 1;

  bool operator==(const Action&) const = default;
  std::string name() const;
};

inline constexpr int kNumActions = 13;
inline constexpr int kTouchRecoveryIndex = 12;

// Policy output order: +x, -x, +y, -y, +z, -z, +roll, -roll, +pitch, -pitch,
// +yaw, -yaw, touch recovery.
const std::array<Action, kNumActions>& enumerate_actions();
int action_index(const Action& a);
const Action& action_at(int index);

struct ActionParams {
  double translation_step = 0.004;
  double rotation_step = 0.2617993877991494;  // 15 degrees

  void validate() const;
};

// Translations move the pad center along a workspace axis. Rotations
// pre-multiply the orientation by a workspace-axis rotation about the pad
// center, so the translation is unchanged. Touch recovery returns
// `last_touch` exactly.
SensorPose apply_action(const SensorPose& pose, const Action& a,
                        const ActionParams& params,
                        const std::optional<SensorPose>& last_touch);

}  // namespace tactex
