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

#include "tactex/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "tactex/error.hpp"

namespace tactex {
namespace {

[[noreturn]] void Bad(std::string_view key, const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, std::string(key) + ": " + what);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view key, const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    Bad(key, "expected a number, got '" + s + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view key, const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    Bad(key, "expected an integer, got '" + s + "'");
  }
  return v;
}

std::uint64_t parse_uint(std::string_view key, const std::string& s) {
  errno = 0;
  char* end = nullptr;
  if (!s.empty() && s[0] == '-') Bad(key, "expected a non-negative integer, got '" + s + "'");
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    Bad(key, "expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

bool parse_bool(std::string_view key, const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  Bad(key, "expected true or false, got '" + s + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

struct Field {
  std::function<void(RunConfig&, std::string_view, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename Get>
Field DoubleField(Get ref) {
  return {[ref](RunConfig& c, std::string_view k, const std::string& v) {
            ref(c) = parse_double(k, v);
          },
          [ref](const RunConfig& c) { return fmt_double(ref(c)); }};
}

template <typename T, typename Get>
Field IntField(Get ref) {
  return {[ref](RunConfig& c, std::string_view k, const std::string& v) {
            if constexpr (std::is_unsigned_v<T>) {
              ref(c) = static_cast<T>(parse_uint(k, v));
            } else {
              ref(c) = static_cast<T>(parse_int(k, v));
            }
          },
          [ref](const RunConfig& c) { return std::to_string(ref(c)); }};
}

template <typename Get>
Field BoolField(Get ref) {
  return {[ref](RunConfig& c, std::string_view k, const std::string& v) {
            ref(c) = parse_bool(k, v);
          },
          [ref](const RunConfig& c) {
            return std::string(ref(c) ? "true" : "false");
          }};
}

// Ordered so dump_config is stable.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = [] {
    std::vector<std::pair<std::string, Field>> t;
#define TX_D(key, member) t.emplace_back(key, DoubleField([](auto& c) -> auto& { return c.member; }))
#define TX_I(key, type, member) t.emplace_back(key, IntField<type>([](auto& c) -> auto& { return c.member; }))
#define TX_B(key, member) t.emplace_back(key, BoolField([](auto& c) -> auto& { return c.member; }))
    TX_I("sensor.width_px", int, episode.sensor.width_px);
    TX_I("sensor.height_px", int, episode.sensor.height_px);
    TX_D("sensor.pad_width", episode.sensor.pad_width);
    TX_D("sensor.pad_height", episode.sensor.pad_height);
    TX_D("sensor.gel_depth", episode.sensor.gel_depth);
    TX_D("sensor.body_length", episode.sensor.body_length);
    TX_D("sensor.contact_epsilon", episode.sensor.contact_epsilon);
    TX_D("sensor.noise_stddev", episode.sensor.noise_stddev);

    TX_D("actions.translation_step", episode.actions.translation_step);
    TX_D("actions.rotation_step", episode.actions.rotation_step);

    TX_D("reward.alpha", episode.reward.alpha);
    TX_D("reward.beta", episode.reward.beta);
    TX_D("reward.revisit_penalty", episode.reward.p_rev);
    TX_D("reward.touch_recovery_penalty", episode.reward.p_tr);
    TX_I("reward.memory_size", std::size_t, episode.reward.memory_size);
    TX_D("reward.visit_translation", episode.reward.trans_thresh);
    TX_D("reward.visit_rotation", episode.reward.rot_thresh);
    TX_D("reward.revisit_radius", episode.reward.revisit_radius);
    TX_D("reward.revisit_rotation", episode.reward.revisit_rot_thresh);
    t.emplace_back("reward.mode",
                   Field{[](RunConfig& c, std::string_view k, const std::string& v) {
                           try {
                             c.episode.reward_mode = parse_reward_mode(v);
                           } catch (const Error&) {
                             Bad(k, "expected tm, am or amb, got '" + v + "'");
                           }
                         },
                         [](const RunConfig& c) {
                           return std::string(reward_mode_name(c.episode.reward_mode));
                         }});

    TX_I("episode.horizon", int, episode.horizon);
    TX_D("episode.iou_target", episode.iou_target);
    TX_I("episode.seed", std::uint64_t, episode.seed);
    TX_D("episode.delta", episode.delta);
    TX_I("episode.gt_samples", std::size_t, episode.gt_samples);
    TX_I("episode.gt_seed", std::uint64_t, episode.gt_seed);
    TX_D("episode.workspace_inflation", episode.workspace_inflation);
    TX_D("episode.approach_fraction", episode.approach_fraction);
    TX_I("episode.max_spawn_attempts", int, episode.max_spawn_attempts);
    TX_B("episode.guarded_motion", episode.guarded_motion);
    TX_B("episode.keep_observed", episode.keep_observed);
    t.emplace_back("episode.spawn",
                   Field{[](RunConfig& c, std::string_view k, const std::string& v) {
                           if (v == "boundary") {
                             c.episode.spawn = SpawnMode::kRandomBoundary;
                           } else if (v == "top") {
                             c.episode.spawn = SpawnMode::kTop;
                           } else {
                             Bad(k, "expected boundary or top, got '" + v + "'");
                           }
                         },
                         [](const RunConfig& c) {
                           return std::string(c.episode.spawn == SpawnMode::kTop ? "top"
                                                                                 : "boundary");
                         }});

    t.emplace_back("state.mode",
                   Field{[](RunConfig& c, std::string_view k, const std::string& v) {
                           try {
                             c.episode.state_mode = parse_state_mode(v);
                           } catch (const Error&) {
                             Bad(k, "expected depth, tta or tts, got '" + v + "'");
                           }
                         },
                         [](const RunConfig& c) {
                           return std::string(state_mode_name(c.episode.state_mode));
                         }});
    TX_I("state.window", std::size_t, episode.window);
    TX_D("state.tta_lambda", episode.tta_lambda);

    TX_D("ppo.gamma", train.ppo.gamma);
    TX_D("ppo.gae_lambda", train.ppo.gae_lambda);
    TX_D("ppo.clip", train.ppo.clip);
    TX_I("ppo.epochs", int, train.ppo.epochs);
    TX_I("ppo.minibatch", int, train.ppo.minibatch);
    TX_D("ppo.learning_rate", train.ppo.learning_rate);
    TX_D("ppo.entropy_coef", train.ppo.entropy_coef);
    TX_D("ppo.value_coef", train.ppo.value_coef);
    TX_D("ppo.max_grad_norm", train.ppo.max_grad_norm);

    TX_I("train.total_steps", std::int64_t, train.total_steps);
    TX_I("train.rollout", int, train.rollout);
    TX_I("train.seed", std::uint64_t, train.seed);
    TX_I("train.envs", int, train.envs);
    TX_I("train.checkpoint_every", std::int64_t, train.checkpoint_every);
    TX_I("train.horizon", int, train_horizon);
    TX_B("train.keep_observed", train_keep_observed);
    t.emplace_back("train.objects",
                   Field{[](RunConfig& c, std::string_view k, const std::string& v) {
                           c.train_objects.clear();
                           std::stringstream ss(v);
                           std::string item;
                           while (std::getline(ss, item, ',')) {
                             item = trim(item);
                             if (!item.empty()) c.train_objects.push_back(item);
                           }
                           if (c.train_objects.empty()) Bad(k, "needs at least one object");
                         },
                         [](const RunConfig& c) {
                           std::string s;
                           for (const auto& o : c.train_objects) s += (s.empty() ? "" : ",") + o;
                           return s;
                         }});
    TX_D("train.mesh_scale", mesh_scale);

    TX_I("eval.episodes", int, eval.episodes);
    TX_I("eval.seed", std::uint64_t, eval.seed);
    TX_B("eval.greedy", eval.greedy);
    TX_B("eval.mask_exits", eval.mask_exits);
#undef TX_D
#undef TX_I
#undef TX_B
    return t;
  }();
  return table;
}

}  // namespace

void RunConfig::validate() const {
  episode.validate();
  train.validate();
  if (train_horizon < 0) throw Error(ErrorCode::kInvalidConfig, "train.horizon must be >= 0");
  if (eval.episodes < 1) throw Error(ErrorCode::kInvalidConfig, "eval.episodes must be >= 1");
  if (!(mesh_scale > 0.0)) throw Error(ErrorCode::kInvalidConfig, "train.mesh_scale must be > 0");
  if (train_objects.empty()) throw Error(ErrorCode::kInvalidConfig, "train.objects is empty");
}

EpisodeConfig RunConfig::training_episode() const {
  EpisodeConfig e = episode;
  if (train_horizon > 0) e.horizon = train_horizon;
  e.keep_observed = train_keep_observed;
  return e;
}

void set_config_value(RunConfig& cfg, std::string_view dotted_key, const std::string& value) {
  for (const auto& [key, field] : fields()) {
    if (key == dotted_key) {
      field.set(cfg, dotted_key, trim(value));
      return;
    }
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown config key '" + std::string(dotted_key) + "'");
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kParse,
                source + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw Error(ErrorCode::kInvalidConfig,
                  "unknown config key '" + section + "' (keys belong in a section)");
    }
    for (const auto& [key, value] : body) {
      set_config_value(cfg, section + "." + key, value.data());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::string dump_config(const RunConfig& cfg) {
  std::ostringstream out;
  std::string current;
  for (const auto& [key, field] : fields()) {
    const auto dot = key.find('.');
    const std::string section = key.substr(0, dot);
    if (section != current) {
      if (!current.empty()) out << '\n';
      out << '[' << section << "]\n";
      current = section;
    }
    out << key.substr(dot + 1) << " = " << field.get(cfg) << '\n';
  }
  return out.str();
}

std::uint64_t training_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [key, field] : fields()) {
    if (key.rfind("eval.", 0) == 0 || key == "train.total_steps" ||
        key == "train.checkpoint_every" || key == "episode.seed") {
      continue;
    }
    const std::string line = key + "=" + field.get(cfg) + "\n";
    for (unsigned char ch : line) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace tactex
