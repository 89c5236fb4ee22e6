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

// tactex command-line front end: train, eval, replay, metrics, gen-mesh.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tactex/config.hpp"
#include "tactex/error.hpp"
#include "tactex/io.hpp"
#include "tactex/run.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string state;
  std::string reward;
  double mesh_scale = 0.0;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "INI config file");
  cmd->add_option("--set", c.sets, "Override a config value, e.g. ppo.clip=0.1");
  cmd->add_option("--state", c.state, "State representation: depth, tta or tts");
  cmd->add_option("--reward", c.reward, "Reward variant: tm, am or amb");
  cmd->add_option("--mesh-scale", c.mesh_scale, "Scale applied to loaded meshes");
  cmd->add_option("--out", c.out, "Output directory (default $TACTEX_OUTPUT_DIR or ./runs/<cmd>)");
}

tactex::RunConfig build_config(const Common& c) {
  tactex::RunConfig cfg = c.config.empty() ? tactex::RunConfig{} : tactex::load_config(c.config);
  for (const std::string& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw tactex::Error(tactex::ErrorCode::kInvalidConfig, "--set expects key=value, got '" + s + "'");
    }
    tactex::set_config_value(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  if (!c.state.empty()) tactex::set_config_value(cfg, "state.mode", c.state);
  if (!c.reward.empty()) tactex::set_config_value(cfg, "reward.mode", c.reward);
  if (c.mesh_scale != 0.0) cfg.mesh_scale = c.mesh_scale;
  cfg.validate();
  return cfg;
}

fs::path out_dir(const Common& c, const char* cmd) {
  if (!c.out.empty()) return c.out;
  return tactex::output_root(fs::path("runs")) / cmd;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tactile surface exploration: training, evaluation and metrics"};
  app.require_subcommand(1);

  Common train_opts;
  int envs = 0;
  std::string resume;
  std::int64_t steps = 0;
  auto* train = app.add_subcommand("train", "Train a PPO exploration policy");
  add_common(train, train_opts);
  train->add_option("--envs", envs, "Parallel rollout collectors");
  train->add_option("--resume", resume, "Checkpoint to continue from");
  train->add_option("--steps", steps, "Total environment steps");

  Common eval_opts;
  std::string agent = "random";
  std::string object = "capsule";
  int episodes = 0;
  std::optional<std::uint64_t> eval_seed;
  auto* eval = app.add_subcommand("eval", "Evaluate a policy on one object");
  add_common(eval, eval_opts);
  eval->add_option("--checkpoint", agent, "Checkpoint path, 'random' or 'scripted'");
  eval->add_option("--mesh", object, "Primitive name or OBJ/STL path");
  eval->add_option("--episodes", episodes, "Number of episodes");
  eval->add_option("--seed", eval_seed, "Evaluation seed");

  std::string replay_log;
  std::string replay_mesh;
  auto* replay = app.add_subcommand("replay", "Re-execute a trajectory log and verify it");
  replay->add_option("log", replay_log, "Trajectory CSV")->required();
  replay->add_option("--mesh", replay_mesh, "Object (defaults to the logged one)");

  std::string gt_path, obs_path;
  double delta = 0.005;
  auto* metrics = app.add_subcommand("metrics", "Surface IoU and Chamfer between two PLY clouds");
  metrics->add_option("gt", gt_path, "Ground-truth PLY")->required();
  metrics->add_option("observed", obs_path, "Observed PLY")->required();
  metrics->add_option("--delta", delta, "Coverage radius in meters");

  std::string prim;
  std::string mesh_out;
  double gen_scale = 1.0;
  auto* gen = app.add_subcommand("gen-mesh", "Write a procedural primitive as OBJ or STL");
  gen->add_option("name", prim, "cube, sphere, cylinder or capsule")->required();
  gen->add_option("output", mesh_out, "Output .obj or .stl path")->required();
  gen->add_option("--scale", gen_scale, "Uniform scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error usage: " << e.what() << std::endl;
    return 2;
  }

  try {
    if (*train) {
      tactex::RunConfig cfg = build_config(train_opts);
      if (envs > 0) cfg.train.envs = envs;
      if (steps > 0) cfg.train.total_steps = steps;
      cfg.validate();
      tactex::TrainOptions opt;
      opt.out_dir = out_dir(train_opts, "train");
      if (!resume.empty()) opt.resume = resume;
      opt.log = &std::cerr;
      const tactex::TrainResult r = tactex::cmd_train(cfg, opt);
      std::cout << json{{"checkpoint", r.checkpoint.string()},
                        {"steps", r.steps},
                        {"updates", r.updates},
                        {"episodes", r.episodes}}
                       .dump()
                << std::endl;
    } else if (*eval) {
      tactex::RunConfig cfg = build_config(eval_opts);
      if (episodes > 0) cfg.eval.episodes = episodes;
      if (eval_seed) cfg.eval.seed = *eval_seed;
      tactex::EvalOptions opt;
      opt.agent = agent;
      opt.object = object;
      opt.out_dir = out_dir(eval_opts, "eval");
      opt.log = &std::cerr;
      const tactex::EvalResult r = tactex::cmd_eval(cfg, opt);
      std::cout << json{{"mean_iou", r.mean_iou},
                        {"std_iou", r.std_iou},
                        {"mean_chamfer", r.mean_chamfer},
                        {"std_chamfer", r.std_chamfer},
                        {"mean_steps", r.mean_steps},
                        {"out", opt.out_dir.string()}}
                       .dump()
                << std::endl;
    } else if (*replay) {
      const tactex::ReplayResult r = tactex::cmd_replay(replay_log, replay_mesh);
      std::cout << json{{"rows", r.rows}, {"match", true}, {"iou", r.iou}, {"reward", r.rewards}}
                       .dump()
                << std::endl;
    } else if (*metrics) {
      const tactex::MetricsResult r = tactex::cmd_metrics(gt_path, obs_path, delta);
      std::cout << json{{"iou", r.iou},
                        {"chamfer", r.chamfer ? json(*r.chamfer) : json(nullptr)},
                        {"delta", delta},
                        {"gt_points", r.gt_points},
                        {"observed_points", r.observed_points}}
                       .dump()
                << std::endl;
    } else if (*gen) {
      tactex::cmd_gen_mesh(prim, mesh_out, gen_scale);
      std::cout << json{{"mesh", mesh_out}}.dump() << std::endl;
    }
  } catch (const tactex::Error& e) {
    std::cerr << "error " << tactex::error_code_name(e.code()) << ": " << e.what() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error internal: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
