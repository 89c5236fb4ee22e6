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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tactex/agents.hpp"
#include "tactex/config.hpp"
#include "tactex/env.hpp"
#include "tactex/nn.hpp"

namespace tactex {

inline constexpr const char* kToolVersion = "0.1.0";

// A primitive name (cube, sphere, cylinder, capsule) or an OBJ/STL path,
// scaled by cfg.mesh_scale. Missing files fail with kIo.
TriangleMesh load_object(const std::string& spec, double mesh_scale);
std::shared_ptr<const Scene> load_scene(const std::string& spec, const RunConfig& cfg,
                                        const EpisodeConfig& episode);

struct Checkpoint {
  int version = 1;
  std::string config;  // dump_config text
  std::uint64_t hash = 0;
  nn::NetSpec net;
  std::vector<double> params;
  std::vector<double> adam_m;
  std::vector<double> adam_v;
  std::int64_t adam_t = 0;
  std::int64_t steps = 0;
  int updates = 0;
  std::int64_t episodes = 0;
};

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// One trajectory row; row 0 is the reset pose with action -1.
struct TrajectoryRow {
  int t = 0;
  SensorPose pose;
  int action = -1;
  double contact = 0.0;
  double reward = 0.0;
  std::size_t visit_count = 0;
  double iou = 0.0;
};

struct Trajectory {
  std::string metadata;  // JSON object, first line of the CSV after "# "
  std::vector<TrajectoryRow> rows;
};

void write_trajectory(const Trajectory& traj, const std::filesystem::path& path);
// Stops at the first incomplete row so truncated logs yield their prefix.
Trajectory read_trajectory(const std::filesystem::path& path);

struct EpisodeSummary {
  int episode = 0;
  std::uint64_t seed = 0;
  int steps = 0;
  double iou = 0.0;
  double chamfer = 0.0;
  Termination termination = Termination::kNone;
};

struct EpisodeOutcome {
  EpisodeSummary summary;
  Trajectory trajectory;
  std::vector<Vec3> cloud;  // observed points, voxel filtered
};

// Runs one episode to termination. `mask` uses the in-workspace fallback.
EpisodeOutcome run_episode(Env& env, Agent& agent, std::uint64_t seed, bool mask,
                           const std::string& metadata);

// Keeps the first point in each cubic voxel of the given edge length.
std::vector<Vec3> voxel_filter(const std::vector<Vec3>& points, double voxel);
inline constexpr double kExportVoxel = 0.0005;

struct EvalResult {
  std::vector<EpisodeSummary> episodes;
  double mean_iou = 0.0;
  double std_iou = 0.0;
  double mean_chamfer = 0.0;
  double std_chamfer = 0.0;
  double mean_steps = 0.0;
};

struct TrainOptions {
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> resume;
  std::ostream* log = nullptr;
};

struct TrainResult {
  std::filesystem::path checkpoint;
  std::int64_t steps = 0;
  int updates = 0;
  std::int64_t episodes = 0;
};

TrainResult cmd_train(const RunConfig& cfg, const TrainOptions& opt);

struct EvalOptions {
  std::string agent = "random";  // "random", "scripted" or a checkpoint path
  std::string object = "capsule";
  std::filesystem::path out_dir;
  bool write_artifacts = true;
  std::ostream* log = nullptr;
};

EvalResult cmd_eval(const RunConfig& cfg, const EvalOptions& opt);

struct ReplayResult {
  std::size_t rows = 0;
  std::vector<double> rewards;
  std::vector<double> iou;
};

// Re-executes the logged actions on `object` (the logged object when
// empty) and checks every column. Throws kReplayMismatch at the first
// differing row.
ReplayResult cmd_replay(const std::filesystem::path& log, const std::string& object,
                        double tolerance = 1e-9);

struct MetricsResult {
  double iou = 0.0;
  std::optional<double> chamfer;
  std::size_t gt_points = 0;
  std::size_t observed_points = 0;
};

MetricsResult cmd_metrics(const std::filesystem::path& gt, const std::filesystem::path& observed,
                          double delta);

// Writes a primitive as OBJ or STL by the output extension.
void cmd_gen_mesh(const std::string& name, const std::filesystem::path& out, double scale);

}  // namespace tactex
