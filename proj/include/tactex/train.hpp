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
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tactex/env.hpp"
#include "tactex/nn.hpp"
#include "tactex/ppo.hpp"

namespace tactex {

struct TrainConfig {
  std::int64_t total_steps = 300000;
  int rollout = 2048;
  PpoConfig ppo;
  std::uint64_t seed = 0;
  int envs = 1;
  std::int64_t checkpoint_every = 0;  // steps; 0 writes only the final one
  bool parallel = true;               // run collectors on threads when envs > 1

  void validate() const;
};

struct EpisodeRecord {
  std::int64_t step = 0;  // global step count when the episode ended
  std::int64_t episode = 0;
  int collector = 0;
  std::string object;
  int length = 0;
  double iou = 0.0;
  double episode_return = 0.0;
  Termination termination = Termination::kNone;
};

struct UpdateRecord {
  std::int64_t step = 0;
  int update = 0;
  UpdateStats stats;
};

struct TrainCallbacks {
  std::function<void(const EpisodeRecord&)> on_episode;
  std::function<void(const UpdateRecord&)> on_update;
  std::function<void()> on_checkpoint;
};

// PPO over several scenes; each collector alternates objects from one
// episode to the next. Collection with N collectors on threads matches
// collection with the same collectors run one after another.
class Trainer {
 public:
  Trainer(std::vector<std::shared_ptr<const Scene>> scenes, EpisodeConfig episode,
          TrainConfig cfg);
  ~Trainer();

  void run(const TrainCallbacks& callbacks = {});

  const nn::PolicyNetwork& network() const { return net_; }
  nn::PolicyNetwork& network() { return net_; }
  const nn::Adam& optimizer() const { return opt_; }
  std::int64_t steps() const { return steps_; }
  int updates() const { return updates_; }
  std::int64_t episodes() const { return episodes_; }
  const TrainConfig& config() const { return cfg_; }

  // Continues from saved parameters and optimizer state. Episodes restart,
  // with seeds derived from the update count.
  void restore(std::vector<double> params, std::vector<double> adam_m, std::vector<double> adam_v,
               std::int64_t adam_t, std::int64_t steps, int updates, std::int64_t episodes);

 private:
  struct Collector;
  void make_collectors();

  std::vector<std::shared_ptr<const Scene>> scenes_;
  EpisodeConfig episode_;
  TrainConfig cfg_;
  nn::PolicyNetwork net_;
  nn::Adam opt_;
  Rng update_rng_;
  std::vector<std::unique_ptr<Collector>> collectors_;
  std::int64_t steps_ = 0;
  int updates_ = 0;
  std::int64_t episodes_ = 0;
};

nn::NetSpec default_net_spec(const EpisodeConfig& episode);

}  // namespace tactex
