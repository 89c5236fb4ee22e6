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

#include <limits>

#include "tactex/error.hpp"

namespace tactex {

int select_action(std::span<const double> logits, std::span<const std::uint8_t> allowed) {
  if (!allowed.empty() && allowed.size() != logits.size()) {
    throw Error(ErrorCode::kShapeMismatch, "action mask length does not match logits");
  }
  int best = -1;
  double best_logit = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (!allowed.empty() && !allowed[i]) continue;
    if (best < 0 || logits[i] > best_logit) {
      best = static_cast<int>(i);
      best_logit = logits[i];
    }
  }
  if (best < 0) throw Error(ErrorCode::kInvalidArgument, "no action is allowed");
  return best;
}

int sample_action(std::span<const double> probs, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  // Rounding left u above the cumulative sum; take the last positive entry.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

PolicyAgent::PolicyAgent(nn::PolicyNetwork net, bool greedy, std::uint64_t seed)
    : net_(std::move(net)), greedy_(greedy), rng_(seed) {}

int PolicyAgent::act(const ExplorationState& s) { return act(s, {}); }

int PolicyAgent::act(const ExplorationState& s, std::span<const std::uint8_t> allowed) {
  const nn::Output out = net_.forward(s);
  if (greedy_) return select_action(out.logits, allowed);
  if (allowed.empty()) return sample_action(out.probs, rng_);
  std::vector<double> masked(out.probs.size(), 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < masked.size(); ++i) {
    if (allowed[i]) sum += masked[i] = out.probs[i];
  }
  if (!(sum > 0.0)) return select_action(out.logits, allowed);
  for (double& p : masked) p /= sum;
  return sample_action(masked, rng_);
}

std::vector<std::uint8_t> in_workspace_mask(const Env& env) {
  std::vector<std::uint8_t> mask(kNumActions, 0);
  for (int i = 0; i < kNumActions; ++i) {
    const Action& a = action_at(i);
    if (a.kind == ActionKind::kTouchRecovery) {
      mask[i] = env.last_touch().has_value();
      continue;
    }
    const SensorPose next = apply_action(env.pose(), a, env.config().actions, env.last_touch());
    mask[i] = env.scene().workspace.contains(next.translation);
  }
  return mask;
}

}  // namespace tactex
