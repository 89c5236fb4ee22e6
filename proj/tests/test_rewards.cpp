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

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tactex/rewards.hpp"

using namespace tactex;

namespace {

SensorPose at(double x, double y, double z) {
  SensorPose p;
  p.translation = Vec3(x, y, z);
  return p;
}

std::size_t linear_count(const VisitCountStore& store, const SensorPose& p, int action) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (store.actions()[i] == action &&
        oracle::close_pose(p, store.poses()[i], store.trans_thresh(), store.rot_thresh())) {
      ++n;
    }
  }
  return n;
}

}  // namespace

TEST_CASE("close_pose examples") {
  const RewardParams rp;
  Rng rng(1);
  const SensorPose p = oracle::random_pose(rng, 0.05);
  CHECK(close_pose(p, p, rp.trans_thresh, rp.rot_thresh));

  SensorPose far = p;
  far.translation.x() += 0.009;
  CHECK_FALSE(close_pose(p, far, rp.trans_thresh, rp.rot_thresh));
  SensorPose near = p;
  near.translation.x() += 0.0079;
  CHECK(close_pose(p, near, rp.trans_thresh, rp.rot_thresh));

  SensorPose flipped = p;
  flipped.rotation.coeffs() = -p.rotation.coeffs();
  CHECK(close_pose(p, flipped, rp.trans_thresh, rp.rot_thresh));
  CHECK(quaternion_gap(p.rotation, flipped.rotation) == 0.0);

  SensorPose turned = p;
  turned.rotation = Eigen::Quaterniond(Eigen::AngleAxisd(0.5, Eigen::Vector3d::UnitY())) * p.rotation;
  // The gap is half the rotation angle: arccos(|<q1, q2>|) = 0.25.
  CHECK(quaternion_gap(p.rotation, turned.rotation) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(close_pose(p, turned, rp.trans_thresh, 0.26));
  CHECK_FALSE(close_pose(p, turned, rp.trans_thresh, 0.24));
}

TEST_CASE("visit counts on small stores") {
  const RewardParams rp;
  VisitCountStore store(rp.trans_thresh, rp.rot_thresh);
  const SensorPose p = at(0.01, 0.02, 0.03);
  CHECK(store.count(p, 0) == 0);
  store.record(p, 0);
  CHECK(store.count(p, 0) == 1);
  CHECK(store.count(p, 1) == 0);
  CHECK(store.count(at(0.011, 0.02, 0.03), 0) == 1);

  store.clear();
  store.record(at(0.0, 0.0, 0.0), 2);
  store.record(at(0.005, 0.0, 0.0), 2);
  store.record(at(0.0, -0.007, 0.0), 2);
  store.record(at(0.0, 0.0, 0.02), 2);  // too far
  store.record(at(0.0, 0.0, 0.0), 3);   // other action
  CHECK(store.count(at(0, 0, 0), 2) == 3);
  CHECK(store.count(at(0, 0, 0), 2) == linear_count(store, at(0, 0, 0), 2));
}

TEST_CASE("visit counts equal a linear scan, with double-cover queries") {
  const RewardParams rp;
  VisitCountStore store(rp.trans_thresh, rp.rot_thresh);
  Rng rng(9);
  std::vector<SensorPose> recorded;
  for (int i = 0; i < 10000; ++i) {
    SensorPose p = oracle::random_pose(rng, 0.03);
    if (i % 7 == 0 && !recorded.empty()) {
      // Near-duplicate of an earlier pose, sometimes with the negated quaternion.
      p = recorded[uniform_index(rng, recorded.size())];
      p.translation += Vec3(uniform(rng, -0.004, 0.004), 0, 0);
      if (i % 2 == 0) p.rotation.coeffs() = -p.rotation.coeffs();
    }
    recorded.push_back(p);
    store.record(p, static_cast<int>(uniform_index(rng, kNumActions)));
  }
  std::size_t nonzero = 0, flipped_hits = 0;
  for (int i = 0; i < 1000; ++i) {
    SensorPose q = i % 2 ? oracle::random_pose(rng, 0.03) : recorded[uniform_index(rng, recorded.size())];
    if (i % 4 == 0) q.rotation.coeffs() = -q.rotation.coeffs();
    const int a = static_cast<int>(uniform_index(rng, kNumActions));
    const std::size_t want = linear_count(store, q, a);
    CHECK(store.count(q, a) == want);
    nonzero += want > 0;
    flipped_hits += (i % 4 == 0 && want > 0);
  }
  CHECK(nonzero > 50);
  CHECK(flipped_hits > 10);
}

TEST_CASE("short-term memory is a FIFO of capacity m") {
  ShortTermMemory mem(20);
  for (int i = 0; i <= 20; ++i) mem.push(at(i * 0.01, 0, 0));
  CHECK(mem.size() == 20);
  CHECK(mem.poses().front().translation.x() == 0.01);
  CHECK_FALSE(mem.contains(at(0, 0, 0), 0.002));
  CHECK(mem.contains(at(0.0101, 0, 0), 0.002));
  CHECK(mem.contains(at(0.2, 0.0019, 0), 0.002));
  CHECK_FALSE(mem.contains(at(0.2, 0.0021, 0), 0.002));
  mem.clear();
  CHECK(mem.size() == 0);
  CHECK(testing::error_of([] { ShortTermMemory bad(0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("record_step updates store and memory") {
  const RewardParams rp;
  VisitCountStore store(rp.trans_thresh, rp.rot_thresh);
  ShortTermMemory mem(rp.memory_size);
  const SensorPose p = at(0, 0, 0), q = at(0.004, 0, 0);
  record_step(store, mem, p, action_at(0), q);
  CHECK(store.count(p, 0) >= 1);
  CHECK(store.count(at(0.001, 0, 0), 0) == 1);
  CHECK(mem.contains(q, rp.revisit_radius));
}

TEST_CASE("reward branches") {
  const RewardParams rp;
  const Action move = action_at(0);
  const Action tr = action_at(kTouchRecoveryIndex);
  CHECK(reward_value(0.5, move, false, 1, rp, RewardMode::kAmb) == doctest::Approx(0.925).epsilon(1e-15));
  CHECK(reward_value(0.5, tr, false, 1, rp, RewardMode::kAmb) == -0.2);
  CHECK(reward_value(0.0, tr, true, 1, rp, RewardMode::kAmb) == -0.2);
  CHECK(reward_value(0.5, move, true, 1, rp, RewardMode::kAmb) == -0.03);
  for (RewardMode m : {RewardMode::kTm, RewardMode::kAm, RewardMode::kAmb}) {
    CHECK(reward_value(0.0, move, false, 0, rp, m) == 0.0);
    CHECK(reward_value(0.3, move, true, 2, rp, m) == -0.03);
  }
  CHECK(reward_value(0.3, move, false, 0, rp, RewardMode::kTm) == 1.0);
  CHECK(reward_value(0.3, move, false, 0, rp, RewardMode::kAm) == 0.3);
  CHECK(testing::error_of([&] { reward_value(0.3, move, false, 0, rp, RewardMode::kAmb); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("reward matches the table oracle across modes") {
  const RewardParams rp;
  Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    const double r_a = i % 5 == 0 ? 0.0 : uniform01(rng);
    const int idx = static_cast<int>(uniform_index(rng, kNumActions));
    const bool revisit = uniform01(rng) < 0.3;
    const std::size_t n = 1 + uniform_index(rng, 50);
    for (int mode = 0; mode < 3; ++mode) {
      const double got = reward_value(r_a, action_at(idx), revisit, n, rp, static_cast<RewardMode>(mode));
      const double want = oracle::reward(r_a, idx == kTouchRecoveryIndex, revisit, static_cast<double>(n), mode);
      CHECK(std::abs(got - want) <= 1e-12);
    }
  }
}

TEST_CASE("bonus is non-increasing in the visit count and bounded") {
  const RewardParams rp;
  for (double r_a : {0.01, 0.4, 1.0}) {
    double prev = 2.0;
    for (std::size_t n = 1; n < 200; ++n) {
      const double r = reward_value(r_a, action_at(2), false, n, rp, RewardMode::kAmb);
      CHECK(r <= prev);
      CHECK(r > 0.0);
      CHECK(r <= rp.alpha + rp.beta);
      prev = r;
    }
  }
}

TEST_CASE("compute_reward reads the store and memory") {
  const RewardParams rp;
  VisitCountStore store(rp.trans_thresh, rp.rot_thresh);
  ShortTermMemory mem(rp.memory_size);
  const SensorPose p = at(0, 0, 0), q = at(0.004, 0, 0);
  store.record(p, 0);
  store.record(p, 0);
  CHECK(compute_reward(0.5, action_at(0), p, q, store, mem, rp, RewardMode::kAmb) ==
        doctest::Approx(0.15 * 0.5 + 0.85 / std::sqrt(2.0)).epsilon(1e-15));
  mem.push(q);
  CHECK(compute_reward(0.5, action_at(0), p, q, store, mem, rp, RewardMode::kAmb) == -0.03);
  // Revisit applies even without contact.
  CHECK(compute_reward(0.0, action_at(0), p, q, store, mem, rp, RewardMode::kAm) == -0.03);
}

TEST_CASE("reward params validation and mode names") {
  RewardParams rp;
  rp.alpha = 0.5;
  CHECK(testing::error_of([&] { rp.validate(); }) == ErrorCode::kInvalidConfig);
  rp = RewardParams{};
  rp.p_rev = 0.1;
  CHECK(testing::error_of([&] { rp.validate(); }) == ErrorCode::kInvalidConfig);
  for (RewardMode m : {RewardMode::kTm, RewardMode::kAm, RewardMode::kAmb}) {
    CHECK(parse_reward_mode(reward_mode_name(m)) == m);
  }
}
