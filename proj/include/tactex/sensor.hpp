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
#include <vector>

#include "tactex/geometry.hpp"
#include "tactex/pose.hpp"
#include "tactex/random.hpp"

namespace tactex {

// Defaults approximate a DIGIT pad downsampled for fast training.
struct SensorSpec {
  int width_px = 32;
  int height_px = 24;
  double pad_width = 0.016;
  double pad_height = 0.012;
  double gel_depth = 0.0015;
  double body_length = 0.025;
  double contact_epsilon = 1e-5;
  double noise_stddev = 0.0;  // additive depth noise on contact taxels

  void validate() const;
  int taxels() const { return width_px * height_px; }
};

// Row-major height x width penetration depths in meters.
struct TactileDepthImage {
  int width = 0;
  int height = 0;
  std::vector<double> depths;
  SensorPose pose_at_capture;
  std::int64_t timestep = 0;

  static TactileDepthImage zeros(int width, int height);
  double at(int row, int col) const { return depths[row * width + col]; }
};

// Orthographic penetration-depth sensor. A taxel at pad position q reads
// clamp(-signed_distance(q), 0, gel_depth).
class TactileSensor {
 public:
  explicit TactileSensor(SensorSpec spec);

  const SensorSpec& spec() const { return spec_; }
  // Taxel center in the sensor frame (z = 0 on the pad plane).
  const Vec3& taxel_local(int index) const { return taxels_[index]; }
  Vec3 taxel_world(const SensorPose& pose, int index) const;

  // Unclamped -signed_distance at every taxel. When the whole pad is
  // provably clear of the surface the values are filled with the lower
  // bound from the pad center instead of per-taxel queries.
  std::vector<double> penetration(const SensorPose& pose, const MeshDistance& mesh) const;

  // True when some taxel penetrates deeper than `limit`.
  bool exceeds_penetration(const SensorPose& pose, const MeshDistance& mesh,
                           double limit) const;

  TactileDepthImage render(const SensorPose& pose, const MeshDistance& mesh,
                           Rng* noise_rng = nullptr) const;
  TactileDepthImage from_penetration(const SensorPose& pose,
                                     const std::vector<double>& penetration,
                                     Rng* noise_rng = nullptr) const;

 private:
  SensorSpec spec_;
  std::vector<Vec3> taxels_;
  double pad_radius_;
};

TactileDepthImage render_depth(const SensorSpec& spec, const SensorPose& pose,
                               const MeshDistance& mesh);

// Fraction of taxels with depth > contact_epsilon.
double contact_area(const TactileDepthImage& img, double contact_epsilon = 1e-5);

// One world point per contacting taxel: the taxel's pad position moved back
// against the pad normal by its depth.
std::vector<Vec3> backproject(const TactileDepthImage& img, const SensorSpec& spec);

}  // namespace tactex
