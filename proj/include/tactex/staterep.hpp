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
#include <deque>
#include <span>
#include <string_view>
#include <vector>

#include "tactex/sensor.hpp"

namespace tactex {

enum class StateMode { kDepth, kTta, kTts };

std::string_view state_mode_name(StateMode mode);
StateMode parse_state_mode(std::string_view name);

// Policy input. `tensor` is channels x height x width, row-major; DEPTH and
// TTA have one channel, TTS has k.
struct ExplorationState {
  StateMode mode = StateMode::kDepth;
  int channels = 1;
  int height = 0;
  int width = 0;
  std::vector<double> tensor;
};

// The k most recent depth images, newest first.
class ObservationWindow {
 public:
  explicit ObservationWindow(std::size_t k);

  void push(TactileDepthImage img);
  void clear() { frames_.clear(); }

  std::size_t capacity() const { return k_; }
  std::size_t size() const { return frames_.size(); }
  bool empty() const { return frames_.empty(); }
  const TactileDepthImage& operator[](std::size_t lag) const { return frames_[lag]; }

 private:
  std::size_t k_;
  std::deque<TactileDepthImage> frames_;
};

// Averaging weights, newest first: lag i gets weight proportional to
// 1 + (k - 1 - i) / lambda, normalized to sum to one, so the newest frame
// has the largest weight.
std::vector<double> tta_weights(std::size_t k, double lambda);

// Weighted per-taxel sum over the window. When the window holds fewer
// frames than weights, the leading weights are renormalized.
ExplorationState tta(const ObservationWindow& window, std::span<const double> weights);

// k-channel stack, newest in channel 0, zero padded past the window length.
ExplorationState tts(const ObservationWindow& window, std::size_t k);

ExplorationState depth_only(const ObservationWindow& window);

// Dispatches on mode with the configured k and lambda.
ExplorationState build_state(StateMode mode, const ObservationWindow& window,
                             std::size_t k, std::span<const double> tta_weights);

}  // namespace tactex
