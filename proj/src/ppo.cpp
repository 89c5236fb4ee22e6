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

#include "tactex/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tactex/error.hpp"

namespace tactex {

void PpoConfig::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorCode::kInvalidConfig, what); };
  if (!(gamma > 0.0 && gamma < 1.0)) fail("ppo.gamma must be in (0, 1)");
  if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0)) fail("ppo.gae_lambda must be in [0, 1]");
  if (!(clip > 0.0 && clip < 1.0)) fail("ppo.clip must be in (0, 1)");
  if (epochs < 1) fail("ppo.epochs must be >= 1");
  if (minibatch < 1) fail("ppo.minibatch must be >= 1");
  if (!(learning_rate > 0.0)) fail("ppo.learning_rate must be > 0");
  if (!(entropy_coef >= 0.0)) fail("ppo.entropy_coef must be >= 0");
  if (!(value_coef >= 0.0)) fail("ppo.value_coef must be >= 0");
  if (!(max_grad_norm > 0.0)) fail("ppo.max_grad_norm must be > 0");
}

void RolloutBuffer::clear() {
  states.clear();
  actions.clear();
  log_probs.clear();
  rewards.clear();
  values.clear();
  dones.clear();
  advantages.clear();
  returns.clear();
}

void RolloutBuffer::add(std::vector<double> state, int action, double log_prob, double reward,
                        double value, bool done) {
  states.push_back(std::move(state));
  actions.push_back(action);
  log_probs.push_back(log_prob);
  rewards.push_back(reward);
  values.push_back(value);
  dones.push_back(done ? 1 : 0);
}

void RolloutBuffer::append(const RolloutBuffer& other) {
  states.insert(states.end(), other.states.begin(), other.states.end());
  actions.insert(actions.end(), other.actions.begin(), other.actions.end());
  log_probs.insert(log_probs.end(), other.log_probs.begin(), other.log_probs.end());
  rewards.insert(rewards.end(), other.rewards.begin(), other.rewards.end());
  values.insert(values.end(), other.values.begin(), other.values.end());
  dones.insert(dones.end(), other.dones.begin(), other.dones.end());
  advantages.insert(advantages.end(), other.advantages.begin(), other.advantages.end());
  returns.insert(returns.end(), other.returns.begin(), other.returns.end());
}

Advantages compute_advantages(std::span<const double> rewards, std::span<const double> values,
                              std::span<const std::uint8_t> dones, double bootstrap_value,
                              double gamma, double gae_lambda) {
  const std::size_t n = rewards.size();
  if (values.size() != n || dones.size() != n) {
    throw Error(ErrorCode::kShapeMismatch, "rewards, values and dones must have equal length");
  }
  Advantages out;
  out.deltas.resize(n);
  out.advantages.resize(n);
  out.returns.resize(n);
  double next_value = bootstrap_value;
  double next_adv = 0.0;
  for (std::size_t t = n; t-- > 0;) {
    const double live = dones[t] ? 0.0 : 1.0;
    out.deltas[t] = rewards[t] + gamma * next_value * live - values[t];
    out.advantages[t] = out.deltas[t] + gamma * gae_lambda * live * next_adv;
    out.returns[t] = out.advantages[t] + values[t];
    next_value = values[t];
    next_adv = out.advantages[t];
  }
  return out;
}

void compute_advantages(RolloutBuffer& buf, double gamma, double gae_lambda,
                        double bootstrap_value) {
  Advantages a =
      compute_advantages(buf.rewards, buf.values, buf.dones, bootstrap_value, gamma, gae_lambda);
  buf.advantages = std::move(a.advantages);
  buf.returns = std::move(a.returns);
}

double clipped_surrogate(double ratio, double advantage, double eps) {
  const double clipped = std::clamp(ratio, 1.0 - eps, 1.0 + eps);
  return std::min(ratio * advantage, clipped * advantage);
}

UpdateStats ppo_update(nn::PolicyNetwork& net, nn::Adam& opt, const RolloutBuffer& buf,
                       const PpoConfig& cfg, Rng& rng) {
  const std::size_t n = buf.size();
  if (buf.advantages.size() != n || buf.returns.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "advantages must be computed before the update");
  }
  UpdateStats stats;
  if (n == 0) return stats;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto tape = net.make_tape();
  const std::size_t mb = static_cast<std::size_t>(cfg.minibatch);
  const int actions = net.spec().actions;
  std::vector<double> logp(actions);
  nn::OutputGrad grad;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
    for (std::size_t start = 0; start < n; start += mb) {
      const std::size_t end = std::min(n, start + mb);
      const double count = static_cast<double>(end - start);

      double mean = 0.0;
      for (std::size_t k = start; k < end; ++k) mean += buf.advantages[order[k]];
      mean /= count;
      double var = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        const double d = buf.advantages[order[k]] - mean;
        var += d * d;
      }
      const double stddev = std::sqrt(var / count);

      net.zero_grad();
      double pl = 0.0, vl = 0.0, ent = 0.0, kl = 0.0, clipped = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t idx = order[k];
        const nn::Output out = net.forward_train(buf.states[idx], *tape);
        const double mx = *std::max_element(out.logits.begin(), out.logits.end());
        double z = 0.0;
        for (int j = 0; j < actions; ++j) z += std::exp(out.logits[j] - mx);
        const double lz = mx + std::log(z);
        double h = 0.0;
        for (int j = 0; j < actions; ++j) {
          logp[j] = out.logits[j] - lz;
          h -= out.probs[j] * logp[j];
        }
        const int a = buf.actions[idx];
        const double adv = (buf.advantages[idx] - mean) / (stddev + 1e-8);
        const double log_ratio = logp[a] - buf.log_probs[idx];
        const double ratio = std::exp(log_ratio);
        const double unclipped = ratio * adv;
        const double clip_term = std::clamp(ratio, 1.0 - cfg.clip, 1.0 + cfg.clip) * adv;
        const bool use_unclipped = unclipped <= clip_term;
        const double surrogate = use_unclipped ? unclipped : clip_term;
        const double verr = out.value - buf.returns[idx];

        pl -= surrogate;
        vl += verr * verr;
        ent += h;
        kl += (ratio - 1.0) - log_ratio;
        if (std::abs(ratio - 1.0) > cfg.clip) clipped += 1.0;

        // d/dlogit_j of (-surrogate + c_v err^2 - c_e H) / count.
        grad.logits.assign(actions, 0.0);
        const double dsurr = use_unclipped ? adv * ratio : 0.0;
        for (int j = 0; j < actions; ++j) {
          const double onehot = j == a ? 1.0 : 0.0;
          grad.logits[j] = (-dsurr * (onehot - out.probs[j]) +
                            cfg.entropy_coef * out.probs[j] * (logp[j] + h)) /
                           count;
        }
        grad.value = cfg.value_coef * 2.0 * verr / count;
        net.backward(*tape, grad);
      }
      pl /= count;
      vl /= count;
      ent /= count;
      const double loss = pl + cfg.value_coef * vl - cfg.entropy_coef * ent;
      if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "non-finite PPO loss at epoch " << epoch << ", minibatch starting " << start
            << ": policy " << pl << ", value " << vl << ", entropy " << ent;
        throw Error(ErrorCode::kNumerical, msg.str());
      }
      stats.grad_norm = nn::clip_grad_norm(net.grads(), cfg.max_grad_norm);
      opt.step(net.params(), net.grads());

      stats.policy_loss += pl;
      stats.value_loss += vl;
      stats.entropy += ent;
      stats.approx_kl += kl / count;
      stats.clip_fraction += clipped / count;
      ++stats.minibatches;
    }
  }
  const double m = static_cast<double>(stats.minibatches);
  stats.policy_loss /= m;
  stats.value_loss /= m;
  stats.entropy /= m;
  stats.approx_kl /= m;
  stats.clip_fraction /= m;
  return stats;
}

}  // namespace tactex
