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

#include "tactex/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tactex/error.hpp"

namespace tactex {

void SensorSpec::validate() const {
  if (width_px < 8 || height_px < 8) {
    throw Error(ErrorCode::kInvalidConfig, "sensor resolution must be at least 8x8");
  }
  if (!(pad_width > 0.0) || !(pad_height > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "sensor pad dimensions must be > 0");
  }
  if (!(gel_depth > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "sensor gel depth must be > 0");
  }
  if (!(body_length > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "sensor body length must be > 0");
  }
  if (!(contact_epsilon >= 0.0) || !(noise_stddev >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "sensor epsilon and noise must be >= 0");
  }
}

TactileDepthImage TactileDepthImage::zeros(int width, int height) {
  TactileDepthImage img;
  img.width = width;
  img.height = height;
  img.depths.assign(static_cast<std::size_t>(width) * height, 0.0);
  return img;
}

TactileSensor::TactileSensor(SensorSpec spec) : spec_(spec) {
  spec_.validate();
  taxels_.reserve(spec_.taxels());
  for (int i = 0; i < spec_.height_px; ++i) {
    for (int j = 0; j < spec_.width_px; ++j) {
      taxels_.emplace_back(((j + 0.5) / spec_.width_px - 0.5) * spec_.pad_width,
                           ((i + 0.5) / spec_.height_px - 0.5) * spec_.pad_height, 0.0);
    }
  }
  pad_radius_ = 0.5 * std::hypot(spec_.pad_width, spec_.pad_height);
}

Vec3 TactileSensor::taxel_world(const SensorPose& pose, int index) const {
  return pose.to_world(taxels_[index]);
}

std::vector<double> TactileSensor::penetration(const SensorPose& pose,
                                               const MeshDistance& mesh) const {
  std::vector<double> out(taxels_.size());
  std::uint32_t hint = 0;
  const double center = mesh.signed_distance(pose.translation, &hint);
  // signed_distance is 1-Lipschitz, so no taxel can be inside.
  if (center > pad_radius_) {
    std::fill(out.begin(), out.end(), -(center - pad_radius_));
    return out;
  }
  for (std::size_t k = 0; k < taxels_.size(); ++k) {
    out[k] = -mesh.signed_distance(pose.to_world(taxels_[k]), &hint);
  }
  return out;
}

bool TactileSensor::exceeds_penetration(const SensorPose& pose, const MeshDistance& mesh,
                                        double limit) const {
  std::uint32_t hint = 0;
  const double center = mesh.signed_distance(pose.translation, &hint);
  if (-center > limit) return true;
  if (center + limit > pad_radius_) return false;
  for (const Vec3& local : taxels_) {
    if (-mesh.signed_distance(pose.to_world(local), &hint) > limit) return true;
  }
  return false;
}

TactileDepthImage TactileSensor::from_penetration(const SensorPose& pose,
                                                  const std::vector<double>& penetration,
                                                  Rng* noise_rng) const {
  TactileDepthImage img = TactileDepthImage::zeros(spec_.width_px, spec_.height_px);
  img.pose_at_capture = pose;
  for (std::size_t k = 0; k < penetration.size(); ++k) {
    double d = std::clamp(penetration[k], 0.0, spec_.gel_depth);
    if (noise_rng != nullptr && spec_.noise_stddev > 0.0 && d > 0.0) {
      const double u1 = 1.0 - uniform01(*noise_rng);
      const double u2 = uniform01(*noise_rng);
      const double gauss =
          std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
      d = std::clamp(d + spec_.noise_stddev * gauss, 0.0, spec_.gel_depth);
    }
    img.depths[k] = d;
  }
  return img;
}

TactileDepthImage TactileSensor::render(const SensorPose& pose, const MeshDistance& mesh,
                                        Rng* noise_rng) const {
  return from_penetration(pose, penetration(pose, mesh), noise_rng);
}

TactileDepthImage render_depth(const SensorSpec& spec, const SensorPose& pose,
                               const MeshDistance& mesh) {
  return TactileSensor(spec).render(pose, mesh);
}

double contact_area(const TactileDepthImage& img, double contact_epsilon) {
  if (img.depths.empty()) return 0.0;
  const auto hits = std::count_if(img.depths.begin(), img.depths.end(),
                                  [&](double d) { return d > contact_epsilon; });
  return static_cast<double>(hits) / static_cast<double>(img.depths.size());
}

std::vector<Vec3> backproject(const TactileDepthImage& img, const SensorSpec& spec) {
  const TactileSensor sensor(spec);
  const Vec3 normal = img.pose_at_capture.pad_normal();
  std::vector<Vec3> points;
  for (std::size_t k = 0; k < img.depths.size(); ++k) {
    const double d = img.depths[k];
    if (d > spec.contact_epsilon) {
      points.push_back(sensor.taxel_world(img.pose_at_capture, static_cast<int>(k)) -
                       d * normal);
    }
  }
  return points;
}

}  // namespace tactex
