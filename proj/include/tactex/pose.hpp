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

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace tactex {

// Rigid transform of the sensor tip. `translation` is the pad center (the
// rotation reference point), in meters. The sensor's local +z axis is the
// outward pad normal, i.e. the direction the pad presses toward.
struct SensorPose {
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();

  Eigen::Vector3d pad_normal() const { return rotation * Eigen::Vector3d::UnitZ(); }
  Eigen::Vector3d to_world(const Eigen::Vector3d& local) const {
    return translation + rotation * local;
  }

  // (x, y, z, qw, qx, qy, qz)
  std::array<double, 7> to_array() const;
  static SensorPose from_array(const std::array<double, 7>& v);

  bool operator==(const SensorPose& other) const;
};

// Pose at `fraction` in [0, 1] of the way from a to b (lerp + slerp).
SensorPose interpolate(const SensorPose& a, const SensorPose& b, double fraction);

}  // namespace tactex
