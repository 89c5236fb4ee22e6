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
#include <span>
#include <string>
#include <vector>

#include "tactex/env.hpp"
#include "tactex/nn.hpp"
#include "tactex/random.hpp"

namespace tactex {

class Agent {
 public:
  virtual ~Agent() = default;
  virtual int act(const ExplorationState& s) = 0;
  virtual std::string name() const = 0;
};

// Highest-logit action among those allowed; an empty mask allows all. When
// the best action is rejected the next-best logit is taken.
int select_action(std::span<const double> logits, std::span<const std::uint8_t> allowed = {});

// Draws from the softmax distribution using one uniform variate.
int sample_action(std::span<const double> probs, Rng& rng);

class PolicyAgent final : public Agent {
 public:
  PolicyAgent(nn::PolicyNetwork net, bool greedy, std::uint64_t seed);

  int act(const ExplorationState& s) override;
  int act(const ExplorationState& s, std::span<const std::uint8_t> allowed);
  std::string name() const override { return greedy_ ? "policy-argmax" : "policy-sample"; }
  const nn::PolicyNetwork& network() const { return net_; }

 private:
  nn::PolicyNetwork net_;
  bool greedy_;
  Rng rng_;
};

class RandomAgent final : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}
  int act(const ExplorationState&) override {
    return static_cast<int>(uniform_index(rng_, kNumActions));
  }
  std::string name() const override { return "random"; }

 private:
  Rng rng_;
};

// Actions whose target pose stays inside the workspace; touch recovery is
// allowed whenever a touch pose exists.
std::vector<std::uint8_t> in_workspace_mask(const Env& env);

struct ScriptedRun {
  std::vector<int> actions;
  std::vector<double> iou;  // after each action
  double final_iou = 0.0;
  bool reached_target = false;
};

struct ScriptedOptions {
  int max_actions = 2600;
  int max_contact_gap = 50;
  double row_margin = 0.002;
  double clearance = 0.012;
  int retreat_steps = 3;
};

// Lawnmower sweep over each face of an axis-aligned box, turning between
// faces in rotation steps. Resets `env`, which must use SpawnMode::kTop.
// Throws kUnsupported for other shapes and kContactLost when contact is
// missing for more than max_contact_gap consecutive actions.
ScriptedRun scripted_boustrophedon(Env& env, const ScriptedOptions& opt = {});

}  // namespace tactex
