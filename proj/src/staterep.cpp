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

#include "tactex/staterep.hpp"

#include <algorithm>
#include <string>

#include "tactex/error.hpp"
#include "tactex/simd/kernels.hpp"

namespace tactex {

std::string_view state_mode_name(StateMode mode) {
  switch (mode) {
    case StateMode::kDepth:
      return "depth";
    case StateMode::kTta:
      return "tta";
    case StateMode::kTts:
      return "tts";
  }
  return "unknown";
}

StateMode parse_state_mode(std::string_view name) {
  if (name == "depth") return StateMode::kDepth;
  if (name == "tta") return StateMode::kTta;
  if (name == "tts") return StateMode::kTts;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown state mode '" + std::string(name) + "' (expected depth, tta, tts)");
}

ObservationWindow::ObservationWindow(std::size_t k) : k_(k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "window length must be >= 1");
}

void ObservationWindow::push(TactileDepthImage img) {
  if (!frames_.empty() &&
      (img.width != frames_.front().width || img.height != frames_.front().height)) {
    throw Error(ErrorCode::kShapeMismatch, "depth image size changed within a window");
  }
  frames_.push_front(std::move(img));
  while (frames_.size() > k_) frames_.pop_back();
}

std::vector<double> tta_weights(std::size_t k, double lambda) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "tta window length must be >= 1");
  if (!(lambda > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tta lambda must be > 0");
  double total = 0.0;
  for (std::size_t c = 0; c < k; ++c) total += 1.0 + static_cast<double>(c) / lambda;
  std::vector<double> w(k);
  for (std::size_t lag = 0; lag < k; ++lag) {
    w[lag] = (1.0 + static_cast<double>(k - 1 - lag) / lambda) / total;
  }
  return w;
}

namespace {

ExplorationState EmptyLike(const ObservationWindow& window, StateMode mode, int channels) {
  ExplorationState s;
  s.mode = mode;
  s.channels = channels;
  s.height = window[0].height;
  s.width = window[0].width;
  s.tensor.assign(static_cast<std::size_t>(channels) * s.height * s.width, 0.0);
  return s;
}

void RequireFrames(const ObservationWindow& window) {
  if (window.empty()) throw Error(ErrorCode::kInvalidArgument, "observation window is empty");
}

}  // namespace

ExplorationState tta(const ObservationWindow& window, std::span<const double> weights) {
  RequireFrames(window);
  const std::size_t n = std::min(window.size(), weights.size());
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "tta needs at least one weight");
  double used = 0.0;
  for (std::size_t i = 0; i < n; ++i) used += weights[i];
  ExplorationState s = EmptyLike(window, StateMode::kTta, 1);
  const auto& kern = simd::kernels();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = n == weights.size() ? weights[i] : weights[i] / used;
    kern.axpy(w, window[i].depths.data(), s.tensor.data(), s.tensor.size());
  }
  return s;
}

ExplorationState tts(const ObservationWindow& window, std::size_t k) {
  RequireFrames(window);
  ExplorationState s = EmptyLike(window, StateMode::kTts, static_cast<int>(k));
  const std::size_t plane = static_cast<std::size_t>(s.height) * s.width;
  for (std::size_t i = 0; i < std::min(k, window.size()); ++i) {
    std::copy(window[i].depths.begin(), window[i].depths.end(),
              s.tensor.begin() + static_cast<std::ptrdiff_t>(i * plane));
  }
  return s;
}

ExplorationState depth_only(const ObservationWindow& window) {
  RequireFrames(window);
  ExplorationState s = EmptyLike(window, StateMode::kDepth, 1);
  s.tensor = window[0].depths;
  return s;
}

ExplorationState build_state(StateMode mode, const ObservationWindow& window,
                             std::size_t k, std::span<const double> weights) {
  switch (mode) {
    case StateMode::kDepth:
      return depth_only(window);
    case StateMode::kTta:
      return tta(window, weights);
    case StateMode::kTts:
      return tts(window, k);
  }
  throw Error(ErrorCode::kInvalidArgument, "bad state mode");
}

}  // namespace tactex
