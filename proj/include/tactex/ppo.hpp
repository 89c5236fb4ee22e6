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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tactex/nn.hpp"
#include "tactex/random.hpp"

namespace tactex {

struct PpoConfig {
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip = 0.2;
  int epochs = 10;
  int minibatch = 64;
  double learning_rate = 3e-4;
  double entropy_coef = 0.01;
  double value_coef = 0.5;
  double max_grad_norm = 0.5;

  void validate() const;
};

// One entry per environment step, in collection order. `dones[t]` marks
// that the episode ended with step t, so values past it do not bootstrap.
struct RolloutBuffer {
  std::vector<std::vector<double>> states;
  std::vector<int> actions;
  std::vector<double> log_probs;
  std::vector<double> rewards;
  std::vector<double> values;
  std::vector<std::uint8_t> dones;

  std::vector<double> advantages;
  std::vector<double> returns;

  std::size_t size() const { return actions.size(); }
  void clear();
  void add(std::vector<double> state, int action, double log_prob, double reward, double value,
           bool done);
  // Appends another buffer's steps; advantages must be computed per part.
  void append(const RolloutBuffer& other);
};

struct Advantages {
  std::vector<double> deltas;
  std::vector<double> advantages;
  std::vector<double> returns;
};

// delta_t = r_t + gamma V(s_{t+1}) (1 - done_t) - V(s_t) with
// V(s_T) = bootstrap_value; A_t = delta_t + gamma lambda (1 - done_t) A_{t+1}.
Advantages compute_advantages(std::span<const double> rewards, std::span<const double> values,
                              std::span<const std::uint8_t> dones, double bootstrap_value,
                              double gamma, double gae_lambda);
void compute_advantages(RolloutBuffer& buf, double gamma, double gae_lambda,
                        double bootstrap_value);

// min(ratio A, clip(ratio, 1 - eps, 1 + eps) A).
double clipped_surrogate(double ratio, double advantage, double eps);

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
  double grad_norm = 0.0;
  int minibatches = 0;
};

// Clipped-surrogate update over `epochs` shuffled passes. Advantages are
// normalized within each minibatch. Throws kNumerical on a non-finite loss.
UpdateStats ppo_update(nn::PolicyNetwork& net, nn::Adam& opt, const RolloutBuffer& buf,
                       const PpoConfig& cfg, Rng& rng);

}  // namespace tactex
