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

#include <set>

#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tactex/actions.hpp"

using namespace tactex;

namespace {

double pose_gap(const SensorPose& a, const SensorPose& b) {
  return (a.translation - b.translation).norm() + (1.0 - std::abs(a.rotation.dot(b.rotation)));
}

}  // namespace

TEST_CASE("action set") {
  const auto& actions = enumerate_actions();
  CHECK(actions.size() == 13);
  CHECK(actions[kTouchRecoveryIndex].kind == ActionKind::kTouchRecovery);
  std::set<std::tuple<int, int, int>> distinct;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const Action& a = actions[i];
    distinct.insert({static_cast<int>(a.kind), a.axis, a.sign});
    CHECK(action_index(a) == static_cast<int>(i));
    CHECK(action_at(static_cast<int>(i)) == a);
  }
  CHECK(distinct.size() == 13);
  CHECK(actions[0] == Action{ActionKind::kTranslate, 0, 1});
  CHECK(actions[1] == Action{ActionKind::kTranslate, 0, -1});
  CHECK(actions[6] == Action{ActionKind::kRotate, 0, 1});
  CHECK(actions[11] == Action{ActionKind::kRotate, 2, -1});
  CHECK(testing::error_of([] { action_at(13); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("+x moves 4 mm and keeps the rotation") {
  const ActionParams params;
  const SensorPose start;
  const SensorPose p = apply_action(start, action_at(0), params, std::nullopt);
  CHECK(p.translation.x() == 0.004);
  CHECK(p.translation.y() == 0.0);
  CHECK(p.translation.z() == 0.0);
  CHECK(p.rotation.coeffs() == start.rotation.coeffs());
}

TEST_CASE("opposite rotations cancel") {
  const ActionParams params;
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const SensorPose p = oracle::random_pose(rng, 0.05);
    for (int axis = 0; axis < 3; ++axis) {
      const SensorPose q = apply_action(apply_action(p, {ActionKind::kRotate, axis, 1}, params, {}),
                                        {ActionKind::kRotate, axis, -1}, params, {});
      CHECK(pose_gap(p, q) < 1e-12);
      CHECK((q.rotation.coeffs() - p.rotation.coeffs()).norm() < 1e-12);
    }
  }
}

TEST_CASE("24 rotations of 15 degrees return to the start") {
  const ActionParams params;
  Rng rng(2);
  const SensorPose p = oracle::random_pose(rng, 0.05);
  for (int idx = 6; idx < 12; ++idx) {
    SensorPose q = p;
    for (int k = 0; k < 24; ++k) q = apply_action(q, action_at(idx), params, std::nullopt);
    CHECK(std::abs(std::abs(q.rotation.dot(p.rotation)) - 1.0) < 1e-9);
    CHECK(q.translation == p.translation);
  }
}

TEST_CASE("rotations are about workspace axes") {
  const ActionParams params;
  SensorPose p;
  p.rotation = Eigen::Quaterniond(Eigen::AngleAxisd(0.7, Eigen::Vector3d::UnitX()));
  const SensorPose q = apply_action(p, action_at(10), params, std::nullopt);  // +yaw
  const Eigen::Quaterniond want =
      Eigen::Quaterniond(Eigen::AngleAxisd(params.rotation_step, Eigen::Vector3d::UnitZ())) * p.rotation;
  CHECK((q.rotation.coeffs() - want.coeffs()).norm() < 1e-15);
}

TEST_CASE("touch recovery returns the last touch exactly") {
  const ActionParams params;
  Rng rng(3);
  const SensorPose touch = oracle::random_pose(rng, 0.05);
  const SensorPose here = oracle::random_pose(rng, 0.05);
  const SensorPose back = apply_action(here, action_at(kTouchRecoveryIndex), params, touch);
  CHECK(back.translation == touch.translation);
  CHECK(back.rotation.coeffs() == touch.rotation.coeffs());
  CHECK(testing::error_of([&] {
          apply_action(here, action_at(kTouchRecoveryIndex), params, std::nullopt);
        }) == ErrorCode::kNoTouchPose);
}

TEST_CASE("translations commute") {
  const ActionParams params;
  Rng rng(4);
  const SensorPose p = oracle::random_pose(rng, 0.05);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      const SensorPose ab = apply_action(apply_action(p, action_at(a), params, {}), action_at(b), params, {});
      const SensorPose ba = apply_action(apply_action(p, action_at(b), params, {}), action_at(a), params, {});
      CHECK((ab.translation - ba.translation).norm() < 1e-15);
      CHECK(ab.rotation.coeffs() == ba.rotation.coeffs());
    }
  }
}

TEST_CASE("rotation about the pad center commutes with translation") {
  // The pose translation is the rotation reference point itself, so a
  // world-axis translation of that point and a rotation about it commute.
  // Rotating about the pad center does move the pad's corners, which is
  // what distinguishes a rotation from a translation here.
  const ActionParams params;
  const double pad_w = 0.016, pad_h = 0.012;
  Rng rng(5);
  const SensorPose p = oracle::random_pose(rng, 0.05);
  for (int r = 6; r < 12; ++r) {
    for (int t = 0; t < 6; ++t) {
      const SensorPose rt = apply_action(apply_action(p, action_at(r), params, {}), action_at(t), params, {});
      const SensorPose tr = apply_action(apply_action(p, action_at(t), params, {}), action_at(r), params, {});
      CHECK(pose_gap(rt, tr) < 1e-15);
    }
    const SensorPose rotated = apply_action(p, action_at(r), params, {});
    const Vec3 corner(0.5 * pad_w, 0.5 * pad_h, 0.0);
    CHECK((rotated.to_world(corner) - p.to_world(corner)).norm() > 1e-4);
    CHECK(rotated.to_world(Vec3::Zero()) == p.to_world(Vec3::Zero()));
  }
}

TEST_CASE("action params validation") {
  ActionParams p;
  p.translation_step = 0.0;
  CHECK(testing::error_of([&] { p.validate(); }) == ErrorCode::kInvalidConfig);
  p = ActionParams{};
  p.rotation_step = 3.2;
  CHECK(testing::error_of([&] { p.validate(); }) == ErrorCode::kInvalidConfig);
}
