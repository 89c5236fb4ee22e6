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

#include "tactex/train.hpp"

#include <cmath>
#include <thread>

#include "tactex/error.hpp"

namespace tactex {

void TrainConfig::validate() const {
  if (total_steps < 1) throw Error(ErrorCode::kInvalidConfig, "train.total_steps must be >= 1");
  if (rollout < 1) throw Error(ErrorCode::kInvalidConfig, "train.rollout must be >= 1");
  if (envs < 1) throw Error(ErrorCode::kInvalidConfig, "train.envs must be >= 1");
  if (envs > rollout) throw Error(ErrorCode::kInvalidConfig, "train.envs must not exceed rollout");
  if (checkpoint_every < 0) {
    throw Error(ErrorCode::kInvalidConfig, "train.checkpoint_every must be >= 0");
  }
  ppo.validate();
}

nn::NetSpec default_net_spec(const EpisodeConfig& episode) {
  nn::NetSpec spec;
  spec.channels = episode.state_mode == StateMode::kTts ? static_cast<int>(episode.window) : 1;
  spec.height = episode.sensor.height_px;
  spec.width = episode.sensor.width_px;
  spec.input_scale = 1.0 / episode.sensor.gel_depth;
  return spec;
}

struct Trainer::Collector {
  int index = 0;
  std::vector<std::unique_ptr<Env>> envs;  // one per scene
  Rng rng;
  std::uint64_t seed_base = 0;
  std::int64_t episode = 0;
  int scene = 0;
  bool need_reset = true;
  ExplorationState state;
  double episode_return = 0.0;

  RolloutBuffer buffer;
  std::vector<EpisodeRecord> finished;

  Env& env() { return *envs[scene]; }

  void collect(const nn::PolicyNetwork& net, int steps, const PpoConfig& ppo) {
    buffer.clear();
    finished.clear();
    const std::size_t nscenes = envs.size();
    for (int i = 0; i < steps; ++i) {
      if (need_reset) {
        scene = static_cast<int>((index + episode) % static_cast<std::int64_t>(nscenes));
        state = env().reset(mix_seed(seed_base, static_cast<std::uint64_t>(episode))).state;
        episode_return = 0.0;
        need_reset = false;
      }
      const nn::Output out = net.forward(state);
      const int action = [&] {
        const double u = uniform01(rng);
        double acc = 0.0;
        for (int a = 0; a < kNumActions; ++a) {
          acc += out.probs[a];
          if (u < acc) return a;
        }
        return kNumActions - 1;
      }();
      const StepResult r = env().step(action);
      episode_return += r.reward;
      buffer.add(state.tensor, action, std::log(out.probs[action]), r.reward, out.value, r.done);
      state = r.state;
      if (r.done) {
        EpisodeRecord rec;
        rec.episode = episode;
        rec.collector = index;
        rec.object = env().scene().name;
        rec.length = r.info.t;
        rec.iou = r.info.iou;
        rec.episode_return = episode_return;
        rec.termination = r.info.termination;
        rec.step = i;  // made global by the trainer
        finished.push_back(rec);
        ++episode;
        need_reset = true;
      }
    }
    const double bootstrap = need_reset ? 0.0 : net.forward(state).value;
    compute_advantages(buffer, ppo.gamma, ppo.gae_lambda, bootstrap);
  }
};

Trainer::Trainer(std::vector<std::shared_ptr<const Scene>> scenes, EpisodeConfig episode,
                 TrainConfig cfg)
    : scenes_(std::move(scenes)),
      episode_(std::move(episode)),
      cfg_(cfg),
      net_((cfg_.validate(), episode_.validate(), default_net_spec(episode_)),
           mix_seed(cfg_.seed, 0x6e6574)),
      opt_(net_.params().size(), cfg_.ppo.learning_rate),
      update_rng_(mix_seed(cfg_.seed, 0x707075)) {
  if (scenes_.empty()) throw Error(ErrorCode::kInvalidConfig, "no training objects");
  make_collectors();
}

Trainer::~Trainer() = default;

void Trainer::make_collectors() {
  collectors_.clear();
  for (int j = 0; j < cfg_.envs; ++j) {
    auto c = std::make_unique<Collector>();
    c->index = j;
    const std::uint64_t base =
        mix_seed(mix_seed(cfg_.seed, static_cast<std::uint64_t>(updates_)), 0x1000 + j);
    c->seed_base = mix_seed(base, 1);
    c->rng.seed(mix_seed(base, 2));
    for (const auto& scene : scenes_) c->envs.push_back(std::make_unique<Env>(scene, episode_));
    collectors_.push_back(std::move(c));
  }
}

void Trainer::restore(std::vector<double> params, std::vector<double> adam_m,
                      std::vector<double> adam_v, std::int64_t adam_t, std::int64_t steps,
                      int updates, std::int64_t episodes) {
  if (params.size() != net_.params().size()) {
    throw Error(ErrorCode::kShapeMismatch, "checkpoint parameter count does not match network");
  }
  net_.params() = std::move(params);
  opt_.restore(std::move(adam_m), std::move(adam_v), adam_t);
  steps_ = steps;
  updates_ = updates;
  episodes_ = episodes;
  update_rng_.seed(mix_seed(mix_seed(cfg_.seed, 0x707075), static_cast<std::uint64_t>(updates)));
  make_collectors();
}

void Trainer::run(const TrainCallbacks& callbacks) {
  std::int64_t next_checkpoint =
      cfg_.checkpoint_every > 0 ? (steps_ / cfg_.checkpoint_every + 1) * cfg_.checkpoint_every : 0;
  while (steps_ < cfg_.total_steps) {
    const int rollout =
        static_cast<int>(std::min<std::int64_t>(cfg_.rollout, cfg_.total_steps - steps_));
    const int n = static_cast<int>(collectors_.size());
    std::vector<int> share(n, rollout / n);
    for (int j = 0; j < rollout % n; ++j) ++share[j];

    if (cfg_.parallel && n > 1) {
      std::vector<std::exception_ptr> errors(n);
      std::vector<std::thread> threads;
      for (int j = 0; j < n; ++j) {
        threads.emplace_back([&, j] {
          try {
            collectors_[j]->collect(net_, share[j], cfg_.ppo);
          } catch (...) {
            errors[j] = std::current_exception();
          }
        });
      }
      for (auto& t : threads) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    } else {
      for (int j = 0; j < n; ++j) collectors_[j]->collect(net_, share[j], cfg_.ppo);
    }

    RolloutBuffer merged;
    std::int64_t offset = steps_;
    for (int j = 0; j < n; ++j) {
      merged.append(collectors_[j]->buffer);
      for (EpisodeRecord rec : collectors_[j]->finished) {
        rec.step += offset + 1;
        rec.episode = episodes_++;
        if (callbacks.on_episode) callbacks.on_episode(rec);
      }
      offset += share[j];
    }
    steps_ += rollout;

    UpdateRecord rec;
    rec.stats = ppo_update(net_, opt_, merged, cfg_.ppo, update_rng_);
    rec.update = ++updates_;
    rec.step = steps_;
    if (callbacks.on_update) callbacks.on_update(rec);

    if (callbacks.on_checkpoint && next_checkpoint > 0 && steps_ >= next_checkpoint &&
        steps_ < cfg_.total_steps) {
      callbacks.on_checkpoint();
      next_checkpoint += cfg_.checkpoint_every;
    }
  }
  if (callbacks.on_checkpoint) callbacks.on_checkpoint();
}

}  // namespace tactex
