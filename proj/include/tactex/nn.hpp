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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "tactex/actions.hpp"
#include "tactex/random.hpp"
#include "tactex/staterep.hpp"

namespace tactex::nn {

enum class Activation { kTanh, kIdentity };

// Two stride-2 3x3 convolutions, two dense layers, then a policy head and a
// value head on the shared trunk.
struct NetSpec {
  int channels = 1;
  int height = 24;
  int width = 32;
  int conv1 = 8;
  int conv2 = 16;
  int hidden1 = 64;
  int hidden2 = 64;
  int actions = kNumActions;
  Activation activation = Activation::kTanh;
  double input_scale = 1.0;
  double policy_init_scale = 0.01;

  bool operator==(const NetSpec&) const = default;
};

struct Output {
  std::vector<double> logits;
  std::vector<double> probs;
  double value = 0.0;
};

// Gradient of a scalar loss with respect to one sample's outputs.
struct OutputGrad {
  std::vector<double> logits;
  double value = 0.0;
};

void softmax(std::span<const double> logits, std::span<double> probs);

class Layer;

class PolicyNetwork {
 public:
  PolicyNetwork(NetSpec spec, std::uint64_t seed);
  ~PolicyNetwork();
  PolicyNetwork(const PolicyNetwork& other);
  PolicyNetwork& operator=(const PolicyNetwork& other);
  PolicyNetwork(PolicyNetwork&&) noexcept;
  PolicyNetwork& operator=(PolicyNetwork&&) noexcept;

  const NetSpec& spec() const { return spec_; }
  std::size_t input_size() const;

  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }
  std::vector<double>& grads() { return grads_; }
  void zero_grad();

  // Throws kShapeMismatch when the state does not match the input shape.
  Output forward(const ExplorationState& s) const;
  Output forward(std::span<const double> input) const;

  // Forward pass that keeps activations, then accumulates d loss / d params
  // into grads() for the given output gradient.
  struct Tape;
  Output forward_train(std::span<const double> input, Tape& tape) const;
  void backward(const Tape& tape, const OutputGrad& grad);

  std::unique_ptr<Tape> make_tape() const;

 private:
  void build();
  void initialize(std::uint64_t seed);

  NetSpec spec_;
  std::vector<std::unique_ptr<Layer>> trunk_;
  std::unique_ptr<Layer> policy_head_;
  std::unique_ptr<Layer> value_head_;
  std::vector<double> params_;
  std::vector<double> grads_;
};

struct PolicyNetwork::Tape {
  std::vector<std::vector<double>> acts;  // acts[0] is the scaled input
  std::vector<double> logits;
  double value = 0.0;
};

NetSpec net_spec_for(const ExplorationState& s, double input_scale);

class Adam {
 public:
  Adam(std::size_t n, double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

  void step(std::vector<double>& params, const std::vector<double>& grads);
  double lr() const { return lr_; }
  void set_lr(double lr) { lr_ = lr; }
  std::int64_t steps() const { return t_; }

  // Moment state for checkpointing.
  const std::vector<double>& m() const { return m_; }
  const std::vector<double>& v() const { return v_; }
  void restore(std::vector<double> m, std::vector<double> v, std::int64_t t);

 private:
  double lr_, beta1_, beta2_, eps_;
  std::vector<double> m_, v_;
  std::int64_t t_ = 0;
};

// Scales grads so their L2 norm is at most max_norm; returns the norm
// before clipping.
double clip_grad_norm(std::vector<double>& grads, double max_norm);

// Per-sample loss: returns the value and fills d loss / d outputs.
using SampleLoss =
    std::function<double(std::size_t sample, const Output& out, OutputGrad* grad)>;

double batch_loss(const PolicyNetwork& net, std::span<const std::vector<double>> inputs,
                  const SampleLoss& loss);

// Central differences on a random parameter subset against backprop;
// returns the largest relative error |a - n| / max(|a|, |n|, floor).
struct GradCheckOptions {
  std::size_t subset = 100;
  double h = 1e-4;
  double floor = 1e-7;
  std::uint64_t seed = 0;
};
double gradient_check(PolicyNetwork& net, std::span<const std::vector<double>> inputs,
                      const SampleLoss& loss, const GradCheckOptions& opt = {});

}  // namespace tactex::nn
