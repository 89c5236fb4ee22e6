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

#include <doctest.h>

#include "helpers.hpp"
#include "tactex/primitives.hpp"
#include "tactex/train.hpp"

using namespace tactex;

namespace {

EpisodeConfig tiny_episode() {
  EpisodeConfig e;
  e.gt_samples = 5000;
  e.horizon = 120;
  e.keep_observed = false;
  return e;
}

TrainConfig tiny_train(int envs, bool parallel) {
  TrainConfig t;
  t.total_steps = 512;
  t.rollout = 256;
  t.ppo.epochs = 2;
  t.ppo.minibatch = 64;
  t.seed = 42;
  t.envs = envs;
  t.parallel = parallel;
  return t;
}

std::vector<std::shared_ptr<const Scene>> scenes(const EpisodeConfig& e) {
  return {make_scene("cube", make_primitive("cube"), e),
          make_scene("sphere", make_primitive("sphere"), e)};
}

struct Curves {
  std::vector<EpisodeRecord> episodes;
  std::vector<UpdateRecord> updates;
  std::vector<double> params;
};

Curves train(int envs, bool parallel) {
  const EpisodeConfig e = tiny_episode();
  Trainer trainer(scenes(e), e, tiny_train(envs, parallel));
  Curves c;
  TrainCallbacks cb;
  cb.on_episode = [&](const EpisodeRecord& r) { c.episodes.push_back(r); };
  cb.on_update = [&](const UpdateRecord& r) { c.updates.push_back(r); };
  trainer.run(cb);
  c.params = trainer.network().params();
  CHECK(trainer.steps() == 512);
  CHECK(trainer.updates() == 2);
  return c;
}

void check_same(const Curves& a, const Curves& b) {
  REQUIRE(a.updates.size() == b.updates.size());
  for (std::size_t i = 0; i < a.updates.size(); ++i) {
    CHECK(a.updates[i].stats.policy_loss == b.updates[i].stats.policy_loss);
    CHECK(a.updates[i].stats.value_loss == b.updates[i].stats.value_loss);
    CHECK(a.updates[i].stats.entropy == b.updates[i].stats.entropy);
  }
  REQUIRE(a.episodes.size() == b.episodes.size());
  for (std::size_t i = 0; i < a.episodes.size(); ++i) {
    CHECK(a.episodes[i].iou == b.episodes[i].iou);
    CHECK(a.episodes[i].length == b.episodes[i].length);
    CHECK(a.episodes[i].object == b.episodes[i].object);
  }
  CHECK(a.params == b.params);
}

}  // namespace

TEST_CASE("training is reproducible") {
  const Curves a = train(1, false);
  const Curves b = train(1, false);
  check_same(a, b);
  CHECK_FALSE(a.episodes.empty());
  for (const UpdateRecord& u : a.updates) {
    CHECK(std::isfinite(u.stats.policy_loss));
    CHECK(std::isfinite(u.stats.value_loss));
  }
}

TEST_CASE("threaded collection equals serial collection") {
  const Curves serial = train(3, false);
  const Curves threaded = train(3, true);
  check_same(serial, threaded);
}

TEST_CASE("episodes alternate between training objects") {
  const Curves c = train(1, false);
  REQUIRE(c.episodes.size() >= 2);
  for (std::size_t i = 1; i < c.episodes.size(); ++i) {
    CHECK(c.episodes[i].object != c.episodes[i - 1].object);
  }
}

TEST_CASE("network input follows the state representation") {
  EpisodeConfig e;
  e.state_mode = StateMode::kTts;
  e.window = 4;
  const nn::NetSpec s = default_net_spec(e);
  CHECK(s.channels == 4);
  CHECK(s.height == 24);
  CHECK(s.width == 32);
  e.state_mode = StateMode::kTta;
  CHECK(default_net_spec(e).channels == 1);
}

TEST_CASE("train config validation") {
  TrainConfig t;
  t.rollout = 0;
  CHECK(testing::error_of([&] { t.validate(); }) == ErrorCode::kInvalidConfig);
  t = TrainConfig{};
  t.envs = 0;
  CHECK(testing::error_of([&] { t.validate(); }) == ErrorCode::kInvalidConfig);
}
