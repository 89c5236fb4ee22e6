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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tactex/actions.hpp"
#include "tactex/coverage.hpp"
#include "tactex/geometry.hpp"
#include "tactex/random.hpp"
#include "tactex/rewards.hpp"
#include "tactex/sensor.hpp"
#include "tactex/staterep.hpp"

namespace tactex {

enum class SpawnMode {
  kRandomBoundary,  // uniform on the workspace boundary, facing the center
  kTop,             // above the center on the +z face, facing down
};

struct EpisodeConfig {
  int horizon = 5000;
  double iou_target = 0.90;
  std::uint64_t seed = 0;

  SensorSpec sensor;
  ActionParams actions;
  RewardParams reward;
  RewardMode reward_mode = RewardMode::kAmb;
  StateMode state_mode = StateMode::kTta;
  std::size_t window = 5;
  double tta_lambda = 50.0;

  std::size_t gt_samples = 100000;
  std::uint64_t gt_seed = 7;
  double delta = 0.005;
  double workspace_inflation = 0.25;

  SpawnMode spawn = SpawnMode::kRandomBoundary;
  double approach_fraction = 0.25;  // approach increment, in translation steps
  int max_spawn_attempts = 100;
  // Stop motions where the gel would bottom out (no taxel deeper than
  // gel_depth) instead of letting the pad pass into the object.
  bool guarded_motion = true;
  bool keep_observed = true;

  void validate() const;
};

// Immutable per-object data shared by every environment on that object.
struct Scene {
  std::string name;
  std::shared_ptr<const MeshDistance> mesh;
  Workspace workspace;
  std::vector<Vec3> gt_samples;
};

std::shared_ptr<const Scene> make_scene(std::string name, TriangleMesh mesh,
                                        const EpisodeConfig& cfg);

enum class Termination { kNone, kIouTarget, kHorizon, kOutOfWorkspace };
std::string_view termination_name(Termination t);

struct StepInfo {
  int t = 0;  // steps taken, including this one
  int action = -1;
  double iou = 0.0;
  double contact = 0.0;
  std::size_t visit_count = 0;
  bool revisit = false;
  double motion_fraction = 1.0;  // < 1 when guarded motion stopped early
  SensorPose pose;
  Termination termination = Termination::kNone;
};

struct StepResult {
  ExplorationState state;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

struct ResetResult {
  ExplorationState state;
  SensorPose pose;
  int spawn_attempts = 0;
  double iou = 0.0;
};

// One exploration episode at a time over a shared scene. Single-threaded;
// run several instances for parallel collection.
class Env {
 public:
  Env(std::shared_ptr<const Scene> scene, EpisodeConfig cfg);

  ResetResult reset();
  ResetResult reset(std::uint64_t seed);
  StepResult step(int action);

  bool done() const { return done_; }
  int steps() const { return t_; }
  const SensorPose& pose() const { return pose_; }
  const std::optional<SensorPose>& last_touch() const { return last_touch_; }
  const ExplorationState& state() const { return state_; }
  const CoverageMap& coverage() const { return coverage_; }
  const TactileDepthImage& observation() const { return window_[0]; }
  const Scene& scene() const { return *scene_; }
  const EpisodeConfig& config() const { return cfg_; }
  const TactileSensor& sensor() const { return sensor_; }
  const VisitCountStore& visits() const { return store_; }
  const ShortTermMemory& memory() const { return memory_; }

 private:
  std::optional<SensorPose> approach(const SensorPose& start, const Vec3& goal);
  SensorPose guarded_target(const SensorPose& from, const SensorPose& to, double* fraction) const;
  void observe(const TactileDepthImage& img);

  std::shared_ptr<const Scene> scene_;
  EpisodeConfig cfg_;
  TactileSensor sensor_;
  std::vector<double> tta_weights_;
  CoverageMap coverage_;
  VisitCountStore store_;
  ShortTermMemory memory_;
  ObservationWindow window_;
  Rng noise_rng_;

  SensorPose pose_;
  std::optional<SensorPose> last_touch_;
  ExplorationState state_;
  int t_ = 0;
  bool done_ = true;
};

}  // namespace tactex
