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

#include "tactex/nn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Core>

#include "tactex/error.hpp"

namespace tactex::nn {

using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;
using VecMap = Eigen::Map<Eigen::VectorXd>;
using ConstMatMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using MatMap = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

class Layer {
 public:
  virtual ~Layer() = default;
  virtual std::unique_ptr<Layer> clone() const = 0;
  virtual std::size_t in_size() const = 0;
  virtual std::size_t out_size() const = 0;
  virtual std::size_t param_count() const { return 0; }
  virtual std::size_t fan_in() const { return 1; }
  virtual std::size_t weight_count() const { return 0; }
  virtual void forward(const double* p, const double* in, double* out) const = 0;
  // Accumulates into dp; writes din when non-null.
  virtual void backward(const double* p, const double* in, const double* out,
                        const double* dout, double* dp, double* din) const = 0;

  std::size_t offset = 0;
};

namespace {

class Conv2d final : public Layer {
 public:
  Conv2d(int c, int h, int w, int o) : c_(c), h_(h), w_(w), o_(o) {
    ho_ = (h_ + 2 * kPad - kK) / kStride + 1;
    wo_ = (w_ + 2 * kPad - kK) / kStride + 1;
  }
  std::unique_ptr<Layer> clone() const override { return std::make_unique<Conv2d>(*this); }
  std::size_t in_size() const override { return static_cast<std::size_t>(c_) * h_ * w_; }
  std::size_t out_size() const override { return static_cast<std::size_t>(o_) * ho_ * wo_; }
  std::size_t weight_count() const override { return static_cast<std::size_t>(o_) * c_ * kK * kK; }
  std::size_t param_count() const override { return weight_count() + o_; }
  std::size_t fan_in() const override { return static_cast<std::size_t>(c_) * kK * kK; }
  int out_h() const { return ho_; }
  int out_w() const { return wo_; }

  void forward(const double* p, const double* in, double* out) const override {
    const double* bias = p + weight_count();
    for (int o = 0; o < o_; ++o) {
      for (int y = 0; y < ho_; ++y) {
        for (int x = 0; x < wo_; ++x) {
          double acc = bias[o];
          for (int c = 0; c < c_; ++c) {
            const double* wk = p + ((o * c_ + c) * kK) * kK;
            const double* plane = in + static_cast<std::size_t>(c) * h_ * w_;
            for (int ky = 0; ky < kK; ++ky) {
              const int iy = y * kStride - kPad + ky;
              if (iy < 0 || iy >= h_) continue;
              for (int kx = 0; kx < kK; ++kx) {
                const int ix = x * kStride - kPad + kx;
                if (ix < 0 || ix >= w_) continue;
                acc += wk[ky * kK + kx] * plane[iy * w_ + ix];
              }
            }
          }
          out[(o * ho_ + y) * wo_ + x] = acc;
        }
      }
    }
  }

  void backward(const double* p, const double* in, const double*, const double* dout,
                double* dp, double* din) const override {
    double* dbias = dp + weight_count();
    if (din != nullptr) std::fill(din, din + in_size(), 0.0);
    for (int o = 0; o < o_; ++o) {
      for (int y = 0; y < ho_; ++y) {
        for (int x = 0; x < wo_; ++x) {
          const double g = dout[(o * ho_ + y) * wo_ + x];
          if (g == 0.0) continue;
          dbias[o] += g;
          for (int c = 0; c < c_; ++c) {
            const std::size_t wbase = static_cast<std::size_t>((o * c_ + c) * kK) * kK;
            const std::size_t pbase = static_cast<std::size_t>(c) * h_ * w_;
            for (int ky = 0; ky < kK; ++ky) {
              const int iy = y * kStride - kPad + ky;
              if (iy < 0 || iy >= h_) continue;
              for (int kx = 0; kx < kK; ++kx) {
                const int ix = x * kStride - kPad + kx;
                if (ix < 0 || ix >= w_) continue;
                const std::size_t at = pbase + static_cast<std::size_t>(iy) * w_ + ix;
                dp[wbase + ky * kK + kx] += g * in[at];
                if (din != nullptr) din[at] += g * p[wbase + ky * kK + kx];
              }
            }
          }
        }
      }
    }
  }

 private:
  static constexpr int kK = 3;
  static constexpr int kStride = 2;
  static constexpr int kPad = 1;
  int c_, h_, w_, o_;
  int ho_ = 0, wo_ = 0;
};

class Dense final : public Layer {
 public:
  Dense(std::size_t in, std::size_t out) : in_(in), out_(out) {}
  std::unique_ptr<Layer> clone() const override { return std::make_unique<Dense>(*this); }
  std::size_t in_size() const override { return in_; }
  std::size_t out_size() const override { return out_; }
  std::size_t weight_count() const override { return in_ * out_; }
  std::size_t param_count() const override { return in_ * out_ + out_; }
  std::size_t fan_in() const override { return in_; }

  void forward(const double* p, const double* in, double* out) const override {
    ConstMatMap w(p, out_, in_);
    VecMap y(out, out_);
    y.noalias() = w * ConstVecMap(in, in_);
    y += ConstVecMap(p + in_ * out_, out_);
  }

  void backward(const double* p, const double* in, const double*, const double* dout,
                double* dp, double* din) const override {
    ConstVecMap g(dout, out_);
    MatMap(dp, out_, in_).noalias() += g * ConstVecMap(in, in_).transpose();
    VecMap(dp + in_ * out_, out_) += g;
    if (din != nullptr) {
      VecMap(din, in_).noalias() = ConstMatMap(p, out_, in_).transpose() * g;
    }
  }

 private:
  std::size_t in_, out_;
};

class Tanh final : public Layer {
 public:
  explicit Tanh(std::size_t n) : n_(n) {}
  std::unique_ptr<Layer> clone() const override { return std::make_unique<Tanh>(*this); }
  std::size_t in_size() const override { return n_; }
  std::size_t out_size() const override { return n_; }

  void forward(const double*, const double* in, double* out) const override {
    for (std::size_t i = 0; i < n_; ++i) out[i] = std::tanh(in[i]);
  }
  void backward(const double*, const double*, const double* out, const double* dout, double*,
                double* din) const override {
    if (din == nullptr) return;
    for (std::size_t i = 0; i < n_; ++i) din[i] = dout[i] * (1.0 - out[i] * out[i]);
  }

 private:
  std::size_t n_;
};

}  // namespace

void softmax(std::span<const double> logits, std::span<double> probs) {
  const double mx = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - mx);
    sum += probs[i];
  }
  for (std::size_t i = 0; i < logits.size(); ++i) probs[i] /= sum;
}

PolicyNetwork::PolicyNetwork(NetSpec spec, std::uint64_t seed) : spec_(spec) {
  if (spec_.channels < 1 || spec_.height < 1 || spec_.width < 1 || spec_.conv1 < 1 ||
      spec_.conv2 < 1 || spec_.hidden1 < 1 || spec_.hidden2 < 1 || spec_.actions < 1 ||
      !(spec_.input_scale > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "network dimensions must be positive");
  }
  build();
  initialize(seed);
}

PolicyNetwork::~PolicyNetwork() = default;
PolicyNetwork::PolicyNetwork(PolicyNetwork&&) noexcept = default;
PolicyNetwork& PolicyNetwork::operator=(PolicyNetwork&&) noexcept = default;

PolicyNetwork::PolicyNetwork(const PolicyNetwork& other)
    : spec_(other.spec_), params_(other.params_), grads_(other.grads_) {
  for (const auto& l : other.trunk_) trunk_.push_back(l->clone());
  policy_head_ = other.policy_head_->clone();
  value_head_ = other.value_head_->clone();
}

PolicyNetwork& PolicyNetwork::operator=(const PolicyNetwork& other) {
  if (this != &other) *this = PolicyNetwork(other);
  return *this;
}

void PolicyNetwork::build() {
  const bool act = spec_.activation == Activation::kTanh;
  auto c1 = std::make_unique<Conv2d>(spec_.channels, spec_.height, spec_.width, spec_.conv1);
  auto c2 = std::make_unique<Conv2d>(spec_.conv1, c1->out_h(), c1->out_w(), spec_.conv2);
  const std::size_t n1 = c1->out_size();
  const std::size_t n2 = c2->out_size();
  trunk_.push_back(std::move(c1));
  if (act) trunk_.push_back(std::make_unique<Tanh>(n1));
  trunk_.push_back(std::move(c2));
  if (act) trunk_.push_back(std::make_unique<Tanh>(n2));
  trunk_.push_back(std::make_unique<Dense>(n2, spec_.hidden1));
  if (act) trunk_.push_back(std::make_unique<Tanh>(spec_.hidden1));
  trunk_.push_back(std::make_unique<Dense>(spec_.hidden1, spec_.hidden2));
  if (act) trunk_.push_back(std::make_unique<Tanh>(spec_.hidden2));
  policy_head_ = std::make_unique<Dense>(spec_.hidden2, spec_.actions);
  value_head_ = std::make_unique<Dense>(spec_.hidden2, 1);

  std::size_t offset = 0;
  for (auto& l : trunk_) {
    l->offset = offset;
    offset += l->param_count();
  }
  policy_head_->offset = offset;
  offset += policy_head_->param_count();
  value_head_->offset = offset;
  offset += value_head_->param_count();
  params_.assign(offset, 0.0);
  grads_.assign(offset, 0.0);
}

void PolicyNetwork::initialize(std::uint64_t seed) {
  Rng rng(seed);
  auto init = [&](const Layer& l, double gain) {
    const double a = gain * std::sqrt(3.0 / static_cast<double>(l.fan_in()));
    for (std::size_t i = 0; i < l.weight_count(); ++i) {
      params_[l.offset + i] = uniform(rng, -a, a);
    }
  };
  for (const auto& l : trunk_) init(*l, 1.0);
  init(*policy_head_, spec_.policy_init_scale);
  init(*value_head_, 1.0);
}

std::size_t PolicyNetwork::input_size() const {
  return static_cast<std::size_t>(spec_.channels) * spec_.height * spec_.width;
}

void PolicyNetwork::zero_grad() { std::fill(grads_.begin(), grads_.end(), 0.0); }

std::unique_ptr<PolicyNetwork::Tape> PolicyNetwork::make_tape() const {
  auto tape = std::make_unique<Tape>();
  tape->acts.resize(trunk_.size() + 1);
  tape->acts[0].resize(input_size());
  for (std::size_t i = 0; i < trunk_.size(); ++i) tape->acts[i + 1].resize(trunk_[i]->out_size());
  tape->logits.resize(spec_.actions);
  return tape;
}

Output PolicyNetwork::forward(const ExplorationState& s) const {
  if (s.channels != spec_.channels || s.height != spec_.height || s.width != spec_.width ||
      s.tensor.size() != input_size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "state shape " + std::to_string(s.channels) + "x" + std::to_string(s.height) +
                    "x" + std::to_string(s.width) + " does not match network input " +
                    std::to_string(spec_.channels) + "x" + std::to_string(spec_.height) + "x" +
                    std::to_string(spec_.width));
  }
  return forward(s.tensor);
}

Output PolicyNetwork::forward(std::span<const double> input) const {
  auto tape = make_tape();
  return forward_train(input, *tape);
}

Output PolicyNetwork::forward_train(std::span<const double> input, Tape& tape) const {
  if (input.size() != input_size()) {
    throw Error(ErrorCode::kShapeMismatch, "input length " + std::to_string(input.size()) +
                                               " != " + std::to_string(input_size()));
  }
  for (std::size_t i = 0; i < input.size(); ++i) tape.acts[0][i] = input[i] * spec_.input_scale;
  const double* p = params_.data();
  for (std::size_t i = 0; i < trunk_.size(); ++i) {
    trunk_[i]->forward(p + trunk_[i]->offset, tape.acts[i].data(), tape.acts[i + 1].data());
  }
  const double* h = tape.acts.back().data();
  policy_head_->forward(p + policy_head_->offset, h, tape.logits.data());
  value_head_->forward(p + value_head_->offset, h, &tape.value);

  Output out;
  out.logits = tape.logits;
  out.probs.resize(out.logits.size());
  softmax(out.logits, out.probs);
  out.value = tape.value;
  return out;
}

void PolicyNetwork::backward(const Tape& tape, const OutputGrad& grad) {
  const double* p = params_.data();
  double* dp = grads_.data();
  const std::size_t hidden = trunk_.back()->out_size();
  std::vector<double> dh(hidden, 0.0), tmp(hidden);
  const double* h = tape.acts.back().data();

  policy_head_->backward(p + policy_head_->offset, h, tape.logits.data(), grad.logits.data(),
                         dp + policy_head_->offset, dh.data());
  value_head_->backward(p + value_head_->offset, h, &tape.value, &grad.value,
                        dp + value_head_->offset, tmp.data());
  for (std::size_t i = 0; i < hidden; ++i) dh[i] += tmp[i];

  std::vector<double> dout = std::move(dh);
  std::vector<double> din;
  for (std::size_t i = trunk_.size(); i-- > 0;) {
    const Layer& l = *trunk_[i];
    const bool need_din = i > 0;
    if (need_din) din.assign(l.in_size(), 0.0);
    l.backward(p + l.offset, tape.acts[i].data(), tape.acts[i + 1].data(), dout.data(),
               dp + l.offset, need_din ? din.data() : nullptr);
    if (need_din) std::swap(dout, din);
  }
}

NetSpec net_spec_for(const ExplorationState& s, double input_scale) {
  NetSpec spec;
  spec.channels = s.channels;
  spec.height = s.height;
  spec.width = s.width;
  spec.input_scale = input_scale;
  return spec;
}

Adam::Adam(std::size_t n, double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), m_(n, 0.0), v_(n, 0.0) {}

void Adam::step(std::vector<double>& params, const std::vector<double>& grads) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grads[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grads[i] * grads[i];
    params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps_);
  }
}

void Adam::restore(std::vector<double> m, std::vector<double> v, std::int64_t t) {
  if (m.size() != m_.size() || v.size() != v_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "optimizer state size mismatch");
  }
  m_ = std::move(m);
  v_ = std::move(v);
  t_ = t;
}

double clip_grad_norm(std::vector<double>& grads, double max_norm) {
  double sq = 0.0;
  for (double g : grads) sq += g * g;
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double s = max_norm / norm;
    for (double& g : grads) g *= s;
  }
  return norm;
}

double batch_loss(const PolicyNetwork& net, std::span<const std::vector<double>> inputs,
                  const SampleLoss& loss) {
  double total = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    total += loss(i, net.forward(std::span<const double>(inputs[i])), nullptr);
  }
  return total;
}

double gradient_check(PolicyNetwork& net, std::span<const std::vector<double>> inputs,
                      const SampleLoss& loss, const GradCheckOptions& opt) {
  net.zero_grad();
  auto tape = net.make_tape();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Output out = net.forward_train(inputs[i], *tape);
    OutputGrad g;
    g.logits.assign(out.logits.size(), 0.0);
    loss(i, out, &g);
    net.backward(*tape, g);
  }
  const std::vector<double> analytic = net.grads();

  std::vector<std::size_t> order(net.params().size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(opt.seed);
  const std::size_t n = std::min(opt.subset, order.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::swap(order[i], order[i + uniform_index(rng, order.size() - i)]);
  }

  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t idx = order[k];
    const double saved = net.params()[idx];
    net.params()[idx] = saved + opt.h;
    const double up = batch_loss(net, inputs, loss);
    net.params()[idx] = saved - opt.h;
    const double down = batch_loss(net, inputs, loss);
    net.params()[idx] = saved;
    const double numeric = (up - down) / (2.0 * opt.h);
    const double a = analytic[idx];
    const double denom = std::max({std::abs(a), std::abs(numeric), opt.floor});
    worst = std::max(worst, std::abs(a - numeric) / denom);
  }
  return worst;
}

}  // namespace tactex::nn
