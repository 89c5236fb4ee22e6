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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tactex/env.hpp"
#include "tactex/train.hpp"

namespace tactex {

struct EvalConfig {
  int episodes = 5;
  std::uint64_t seed = 1000;
  bool greedy = true;
  // Replace actions that would leave the workspace by the next-best logit.
  bool mask_exits = true;
};

// Everything a run depends on. Serialized as INI with one section per
// module; angles are in radians and lengths in meters.
struct RunConfig {
  EpisodeConfig episode;
  TrainConfig train;
  EvalConfig eval;
  std::vector<std::string> train_objects = {"cube", "sphere"};
  int train_horizon = 0;  // 0 uses episode.horizon
  bool train_keep_observed = false;
  double mesh_scale = 1.0;

  void validate() const;
  EpisodeConfig training_episode() const;
};

// Throws kInvalidConfig naming the offending section.key.
void set_config_value(RunConfig& cfg, std::string_view dotted_key, const std::string& value);
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

// Canonical INI text; parse_config(dump_config(c)) reproduces c exactly.
std::string dump_config(const RunConfig& cfg);

// FNV-1a over the settings that shape a trained network and its data.
std::uint64_t training_hash(const RunConfig& cfg);

std::string hex64(std::uint64_t v);

}  // namespace tactex
