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

#include "tactex/env.hpp"

#include <cmath>

#include "tactex/error.hpp"

namespace tactex {

void EpisodeConfig::validate() const {
  if (horizon < 1) throw Error(ErrorCode::kInvalidConfig, "horizon must be >= 1");
  if (!(iou_target > 0.0 && iou_target <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "iou_target must be in (0, 1]");
  }
  sensor.validate();
  actions.validate();
  reward.validate();
  if (window < 1) throw Error(ErrorCode::kInvalidConfig, "state window must be >= 1");
  if (!(tta_lambda > 0.0)) throw Error(ErrorCode::kInvalidConfig, "tta lambda must be > 0");
  if (gt_samples < 1) throw Error(ErrorCode::kInvalidConfig, "gt sample count must be >= 1");
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidConfig, "coverage delta must be > 0");
  if (!(approach_fraction > 0.0 && approach_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "approach fraction must be in (0, 1]");
  }
  if (max_spawn_attempts < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max spawn attempts must be >= 1");
  }
}

std::shared_ptr<const Scene> make_scene(std::string name, TriangleMesh mesh,
                                        const EpisodeConfig& cfg) {
  auto scene = std::make_shared<Scene>();
  scene->name = std::move(name);
  scene->workspace = make_workspace(mesh, cfg.workspace_inflation, cfg.sensor.body_length);
  scene->gt_samples = sample_surface(mesh, cfg.gt_samples, cfg.gt_seed).points;
  scene->mesh = std::make_shared<MeshDistance>(
      std::make_shared<const TriangleMesh>(std::move(mesh)));
  return scene;
}

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::kNone:
      return "none";
    case Termination::kIouTarget:
      return "iou_target";
    case Termination::kHorizon:
      return "horizon";
    case Termination::kOutOfWorkspace:
      return "out_of_workspace";
  }
  return "unknown";
}

Env::Env(std::shared_ptr<const Scene> scene, EpisodeConfig cfg)
    : scene_(std::move(scene)),
      cfg_((cfg.validate(), cfg)),
      sensor_(cfg_.sensor),
      tta_weights_(tta_weights(cfg_.window, cfg_.tta_lambda)),
      coverage_(scene_->gt_samples, cfg_.delta, cfg_.keep_observed),
      store_(cfg_.reward.trans_thresh, cfg_.reward.rot_thresh),
      memory_(cfg_.reward.memory_size),
      window_(cfg_.window) {}

ResetResult Env::reset() { return reset(cfg_.seed); }

std::optional<SensorPose> Env::approach(const SensorPose& start, const Vec3& goal) {
  const Vec3 dir = (goal - start.translation).normalized();
  const double length = (goal - start.translation).norm();
  const double step = cfg_.approach_fraction * cfg_.actions.translation_step;
  const auto increments = static_cast<int>(std::floor(length / step));
  SensorPose pose = start;
  for (int k = 0; k <= increments; ++k) {
    pose.translation = start.translation + (k * step) * dir;
    const TactileDepthImage img = sensor_.render(pose, *scene_->mesh);
    if (contact_area(img, cfg_.sensor.contact_epsilon) > 0.0) return pose;
  }
  return std::nullopt;
}

ResetResult Env::reset(std::uint64_t seed) {
  Rng rng(seed);
  noise_rng_.seed(mix_seed(seed, 1));
  const Workspace& ws = scene_->workspace;
  const Vec3 size = ws.max_corner - ws.min_corner;

  ResetResult result;
  std::optional<SensorPose> touch;
  for (int attempt = 1; attempt <= cfg_.max_spawn_attempts && !touch; ++attempt) {
    result.spawn_attempts = attempt;
    SensorPose start;
    if (cfg_.spawn == SpawnMode::kTop) {
      start.translation = Vec3(ws.center.x(), ws.center.y(), ws.max_corner.z());
    } else {
      // Pick a box face with probability proportional to its area.
      const double areas[3] = {size.y() * size.z(), size.x() * size.z(), size.x() * size.y()};
      const double total = 2.0 * (areas[0] + areas[1] + areas[2]);
      double pick = uniform01(rng) * total;
      int axis = 0;
      while (axis < 2 && pick >= 2.0 * areas[axis]) pick -= 2.0 * areas[axis++];
      const bool upper = pick >= areas[axis];
      for (int k = 0; k < 3; ++k) {
        start.translation[k] = uniform(rng, ws.min_corner[k], ws.max_corner[k]);
      }
      start.translation[axis] = upper ? ws.max_corner[axis] : ws.min_corner[axis];
    }
    const Vec3 facing = ws.center - start.translation;
    if (!(facing.norm() > 0.0)) continue;
    const Vec3 dir = facing.normalized();
    if (dir.z() <= -1.0 + 1e-12) {
      start.rotation = Eigen::Quaterniond(0.0, 1.0, 0.0, 0.0);  // half turn about x
    } else {
      start.rotation = Eigen::Quaterniond::FromTwoVectors(Vec3::UnitZ(), dir).normalized();
    }
    touch = approach(start, ws.center);
  }
  if (!touch) {
    throw Error(ErrorCode::kNoFirstTouch,
                "no first touch after " + std::to_string(cfg_.max_spawn_attempts) +
                    " spawn attempts on " + scene_->name);
  }

  store_.clear();
  memory_.clear();
  coverage_.reset();
  window_.clear();
  pose_ = *touch;
  last_touch_ = pose_;
  t_ = 0;
  done_ = false;

  TactileDepthImage img = sensor_.render(pose_, *scene_->mesh, &noise_rng_);
  img.timestep = 0;
  coverage_.update(backproject(img, cfg_.sensor));
  observe(img);

  result.state = state_;
  result.pose = pose_;
  result.iou = coverage_.iou();
  return result;
}

void Env::observe(const TactileDepthImage& img) {
  window_.push(img);
  state_ = build_state(cfg_.state_mode, window_, cfg_.window, tta_weights_);
}

SensorPose Env::guarded_target(const SensorPose& from, const SensorPose& to,
                               double* fraction) const {
  *fraction = 1.0;
  const double limit = cfg_.sensor.gel_depth;
  if (!cfg_.guarded_motion || !sensor_.exceeds_penetration(to, *scene_->mesh, limit)) {
    return to;
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (sensor_.exceeds_penetration(interpolate(from, to, mid), *scene_->mesh, limit)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  *fraction = lo;
  return interpolate(from, to, lo);
}

StepResult Env::step(int action) {
  if (done_) throw Error(ErrorCode::kEpisodeDone, "step called on a finished episode");
  const Action& a = action_at(action);

  StepResult out;
  out.info.action = action;
  const SensorPose target = apply_action(pose_, a, cfg_.actions, last_touch_);
  ++t_;
  out.info.t = t_;

  if (!scene_->workspace.contains(target.translation)) {
    done_ = true;
    out.done = true;
    out.reward = 0.0;
    out.state = state_;
    out.info.iou = coverage_.iou();
    out.info.pose = target;
    out.info.termination = Termination::kOutOfWorkspace;
    return out;
  }

  SensorPose next = target;
  if (a.kind != ActionKind::kTouchRecovery) {
    next = guarded_target(pose_, target, &out.info.motion_fraction);
  }

  TactileDepthImage img = sensor_.render(next, *scene_->mesh, &noise_rng_);
  img.timestep = t_;
  const double contact = contact_area(img, cfg_.sensor.contact_epsilon);

  store_.record(pose_, action);
  const std::size_t visits = store_.count(pose_, action);
  const bool revisit =
      memory_.contains(next, cfg_.reward.revisit_radius, cfg_.reward.revisit_rot_thresh);
  out.reward = reward_value(contact, a, revisit, visits, cfg_.reward, cfg_.reward_mode);
  memory_.push(next);

  coverage_.update(backproject(img, cfg_.sensor));
  if (contact > 0.0) last_touch_ = next;
  pose_ = next;
  observe(img);

  out.state = state_;
  out.info.iou = coverage_.iou();
  out.info.contact = contact;
  out.info.visit_count = visits;
  out.info.revisit = revisit;
  out.info.pose = pose_;
  if (out.info.iou > cfg_.iou_target) {
    out.info.termination = Termination::kIouTarget;
  } else if (t_ >= cfg_.horizon) {
    out.info.termination = Termination::kHorizon;
  }
  done_ = out.info.termination != Termination::kNone;
  out.done = done_;
  return out;
}

}  // namespace tactex
