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

#include "tactex/agents.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "tactex/error.hpp"
#include "tactex/primitives.hpp"

namespace tactex {
namespace {

struct Face {
  int axis;
  int sign;
};

int translate_index(int axis, int sign) {
  return action_index(Action{ActionKind::kTranslate, axis, sign});
}

int rotate_index(int axis, int sign) {
  return action_index(Action{ActionKind::kRotate, axis, sign});
}

class Sweeper {
 public:
  Sweeper(Env& env, const ScriptedOptions& opt) : env_(env), opt_(opt) {
    const Aabb& box = env.scene().mesh->mesh().bounds();
    center_ = box.center();
    half_ = 0.5 * box.extent();
    step_ = env.config().actions.translation_step;
  }

  ScriptedRun run() {
    const Face faces[6] = {{2, 1}, {0, 1}, {1, 1}, {0, -1}, {1, -1}, {2, -1}};
    for (int f = 0; f < 6 && !finished_; ++f) {
      const std::optional<Face> entry = f > 0 ? std::optional<Face>(faces[f - 1]) : std::nullopt;
      const std::optional<Face> exit = f < 5 ? std::optional<Face>(faces[f + 1]) : std::nullopt;
      if (entry) transition(*entry, faces[f]);
      if (finished_) break;
      const std::vector<Vec3> waypoints = plan_face(faces[f], entry, exit);
      for (const Vec3& w : waypoints) {
        if (!translate_to(w, faces[f].axis)) break;
      }
    }
    result_.final_iou = env_.coverage().iou();
    return result_;
  }

 private:
  // Returns false once the episode or the action budget has ended.
  bool step(int action) {
    if (finished_) return false;
    if (static_cast<int>(result_.actions.size()) >= opt_.max_actions) {
      finished_ = true;
      return false;
    }
    const StepResult r = env_.step(action);
    result_.actions.push_back(action);
    result_.iou.push_back(r.info.iou);
    if (r.info.contact > 0.0) {
      gap_ = 0;
    } else if (++gap_ > opt_.max_contact_gap) {
      throw Error(ErrorCode::kContactLost,
                  "scripted sweep lost contact for more than " +
                      std::to_string(opt_.max_contact_gap) + " actions at step " +
                      std::to_string(r.info.t));
    }
    if (r.done) {
      finished_ = true;
      result_.reached_target = r.info.termination == Termination::kIouTarget;
    }
    return !finished_;
  }

  // Steps along the axis of largest remaining error until every axis other
  // than `skip_axis` is within half a step of the target.
  bool translate_to(const Vec3& target, int skip_axis) {
    for (int guard = 0; guard < 1000; ++guard) {
      const Vec3 err = target - env_.pose().translation;
      int axis = -1;
      double worst = 0.5 * step_ + 1e-9;
      for (int k = 0; k < 3; ++k) {
        if (k == skip_axis) continue;
        if (std::abs(err[k]) > worst) {
          worst = std::abs(err[k]);
          axis = k;
        }
      }
      if (axis < 0) return !finished_;
      const Vec3 before = env_.pose().translation;
      if (!step(translate_index(axis, err[axis] > 0.0 ? 1 : -1))) return false;
      if ((env_.pose().translation - before).norm() < 1e-12) return true;  // blocked
    }
    return !finished_;
  }

  Vec3 pad_half_extent() const {
    const Eigen::Matrix3d r = env_.pose().rotation.toRotationMatrix();
    const SensorSpec& s = env_.config().sensor;
    Vec3 h;
    for (int k = 0; k < 3; ++k) {
      h[k] = std::abs(r(k, 0)) * 0.5 * s.pad_width + std::abs(r(k, 1)) * 0.5 * s.pad_height;
    }
    return h;
  }

  std::vector<Vec3> plan_face(const Face& face, const std::optional<Face>& entry,
                              const std::optional<Face>& exit) const {
    int s_axis = (face.axis + 1) % 3;
    if (exit) {
      s_axis = exit->axis;
    } else if (entry) {
      s_axis = entry->axis;
    }
    const int r_axis = 3 - face.axis - s_axis;
    const Vec3 pad = pad_half_extent();
    const double delta = env_.config().delta;

    const double width = 2.0 * (pad[r_axis] + delta) - opt_.row_margin;
    const double span = 2.0 * half_[r_axis] - 2.0 * (pad[r_axis] + delta);
    const int rows = span > 0.0 ? static_cast<int>(std::ceil(span / width)) + 1 : 1;
    std::vector<double> row_pos(rows);
    for (int i = 0; i < rows; ++i) row_pos[i] = (i - 0.5 * (rows - 1)) * width;
    if (entry && entry->axis == r_axis && entry->sign > 0) {
      std::reverse(row_pos.begin(), row_pos.end());
    }

    int dir = 1;
    if (exit) {
      dir = (rows % 2 == 1) ? exit->sign : -exit->sign;
    } else if (entry && entry->axis == s_axis) {
      dir = -entry->sign;
    }
    const double reach = std::max(0.0, half_[s_axis] - pad[s_axis]);

    std::vector<Vec3> waypoints;
    for (int i = 0; i < rows; ++i) {
      for (int end : {-1, 1}) {
        Vec3 w = center_;
        w[s_axis] += end * dir * reach;
        w[r_axis] += row_pos[i];
        waypoints.push_back(w);
      }
      dir = -dir;
    }
    return waypoints;
  }

  void transition(const Face& from, const Face& to) {
    for (int i = 0; i < opt_.retreat_steps; ++i) {
      if (!step(translate_index(from.axis, from.sign))) return;
    }
    const double pad_radius = 0.5 * std::hypot(env_.config().sensor.pad_width,
                                               env_.config().sensor.pad_height);
    Vec3 out = env_.pose().translation;
    out[to.axis] = center_[to.axis] + to.sign * (half_[to.axis] + opt_.clearance);
    if (!translate_to(out, from.axis)) return;

    // Turn the pad normal from -n_from to -n_to about n_from x n_to.
    Vec3 n_from = Vec3::Zero(), n_to = Vec3::Zero();
    n_from[from.axis] = from.sign;
    n_to[to.axis] = to.sign;
    const Vec3 k = n_from.cross(n_to);
    int k_axis = 0;
    for (int i = 1; i < 3; ++i) {
      if (std::abs(k[i]) > std::abs(k[k_axis])) k_axis = i;
    }
    const int turns = static_cast<int>(
        std::lround((M_PI / 2.0) / env_.config().actions.rotation_step));
    for (int i = 0; i < turns; ++i) {
      if (!step(rotate_index(k_axis, k[k_axis] > 0.0 ? 1 : -1))) return;
    }

    const std::vector<Vec3> plan = plan_face(to, from, std::nullopt);
    Vec3 start = plan.front();
    start[to.axis] = env_.pose().translation[to.axis];
    if (!translate_to(start, to.axis)) return;

    const int max_approach =
        static_cast<int>(std::ceil((opt_.clearance + pad_radius) / step_)) + 2;
    for (int i = 0; i < max_approach; ++i) {
      if (!step(translate_index(to.axis, -to.sign))) return;
      if (gap_ == 0) return;
    }
    throw Error(ErrorCode::kContactLost, "scripted sweep found no contact on the next face");
  }

  Env& env_;
  ScriptedOptions opt_;
  ScriptedRun result_;
  Vec3 center_;
  Vec3 half_;
  double step_ = 0.0;
  int gap_ = 0;
  bool finished_ = false;
};

}  // namespace

ScriptedRun scripted_boustrophedon(Env& env, const ScriptedOptions& opt) {
  if (env.config().spawn != SpawnMode::kTop) {
    throw Error(ErrorCode::kInvalidArgument, "scripted sweep needs the top spawn mode");
  }
  if (!is_axis_aligned_box(env.scene().mesh->mesh(), 1e-9)) {
    throw Error(ErrorCode::kUnsupported,
                "scripted sweep supports axis-aligned boxes only, got '" + env.scene().name + "'");
  }
  env.reset();
  Sweeper sweeper(env, opt);
  return sweeper.run();
}

}  // namespace tactex
