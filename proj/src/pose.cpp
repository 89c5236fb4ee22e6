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

#include "tactex/pose.hpp"

namespace tactex {

std::array<double, 7> SensorPose::to_array() const {
  return {translation.x(), translation.y(), translation.z(), rotation.w(),
          rotation.x(),    rotation.y(),    rotation.z()};
}

SensorPose SensorPose::from_array(const std::array<double, 7>& v) {
  SensorPose pose;
  pose.translation = Eigen::Vector3d(v[0], v[1], v[2]);
  pose.rotation = Eigen::Quaterniond(v[3], v[4], v[5], v[6]);
  return pose;
}

bool SensorPose::operator==(const SensorPose& other) const {
  return translation == other.translation &&
         rotation.coeffs() == other.rotation.coeffs();
}

SensorPose interpolate(const SensorPose& a, const SensorPose& b, double fraction) {
  if (fraction <= 0.0) return a;
  if (fraction >= 1.0) return b;
  SensorPose out;
  out.translation = a.translation + fraction * (b.translation - a.translation);
  out.rotation = a.rotation.slerp(fraction, b.rotation).normalized();
  return out;
}

}  // namespace tactex
