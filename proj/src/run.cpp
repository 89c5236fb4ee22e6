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

#include "tactex/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include <json.hpp>

#include "tactex/error.hpp"
#include "tactex/io.hpp"
#include "tactex/mesh_io.hpp"
#include "tactex/metrics.hpp"
#include "tactex/primitives.hpp"
#include "tactex/simd/kernels.hpp"
#include "tactex/train.hpp"

namespace tactex {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

bool is_primitive(const std::string& s) {
  return s == "cube" || s == "sphere" || s == "cylinder" || s == "capsule";
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json episode_json(const EpisodeSummary& e) {
  return json{{"episode", e.episode},
              {"seed", e.seed},
              {"steps", e.steps},
              {"iou", e.iou},
              {"chamfer", std::isfinite(e.chamfer) ? json(e.chamfer) : json(nullptr)},
              {"termination", std::string(termination_name(e.termination))}};
}

json manifest_base(const std::string& command, const RunConfig& cfg, std::uint64_t seed) {
  return json{{"tool", "tactex"},
              {"version", kToolVersion},
              {"command", command},
              {"config", dump_config(cfg)},
              {"config_hash", hex64(training_hash(cfg))},
              {"seed", seed},
              {"simd", std::string(simd::isa_name(simd::active_isa()))}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void logline(std::ostream* log, const std::string& s) {
  if (log != nullptr) *log << s << std::endl;
}

}  // namespace

TriangleMesh load_object(const std::string& spec, double mesh_scale) {
  if (is_primitive(spec)) {
    TriangleMesh m = make_primitive(spec);
    return mesh_scale == 1.0 ? m : m.scaled(mesh_scale);
  }
  if (!fs::exists(spec)) throw Error(ErrorCode::kIo, "mesh not found: " + spec);
  return load_mesh(spec, mesh_scale);
}

std::shared_ptr<const Scene> load_scene(const std::string& spec, const RunConfig& cfg,
                                        const EpisodeConfig& episode) {
  return make_scene(spec, load_object(spec, cfg.mesh_scale), episode);
}

void save_checkpoint(const Checkpoint& c, const fs::path& path) {
  json j{{"format", "tactex-checkpoint"},
         {"version", c.version},
         {"config", c.config},
         {"config_hash", hex64(c.hash)},
         {"net",
          {{"channels", c.net.channels},
           {"height", c.net.height},
           {"width", c.net.width},
           {"conv1", c.net.conv1},
           {"conv2", c.net.conv2},
           {"hidden1", c.net.hidden1},
           {"hidden2", c.net.hidden2},
           {"actions", c.net.actions},
           {"activation", c.net.activation == nn::Activation::kTanh ? "tanh" : "identity"},
           {"input_scale", c.net.input_scale},
           {"policy_init_scale", c.net.policy_init_scale}}},
         {"params", c.params},
         {"adam_m", c.adam_m},
         {"adam_v", c.adam_v},
         {"adam_t", c.adam_t},
         {"steps", c.steps},
         {"updates", c.updates},
         {"episodes", c.episodes}};
  write_file_atomic(path, j.dump());
}

Checkpoint load_checkpoint(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read checkpoint " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  try {
    if (j.at("format") != "tactex-checkpoint") {
      throw Error(ErrorCode::kParse, path.string() + ": not a checkpoint");
    }
    Checkpoint c;
    c.version = j.at("version");
    if (c.version != 1) {
      throw Error(ErrorCode::kParse,
                  path.string() + ": unsupported checkpoint version " + std::to_string(c.version));
    }
    c.config = j.at("config");
    c.hash = std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
    const json& n = j.at("net");
    c.net.channels = n.at("channels");
    c.net.height = n.at("height");
    c.net.width = n.at("width");
    c.net.conv1 = n.at("conv1");
    c.net.conv2 = n.at("conv2");
    c.net.hidden1 = n.at("hidden1");
    c.net.hidden2 = n.at("hidden2");
    c.net.actions = n.at("actions");
    c.net.activation =
        n.at("activation") == "tanh" ? nn::Activation::kTanh : nn::Activation::kIdentity;
    c.net.input_scale = n.at("input_scale");
    c.net.policy_init_scale = n.at("policy_init_scale");
    c.params = j.at("params").get<std::vector<double>>();
    c.adam_m = j.at("adam_m").get<std::vector<double>>();
    c.adam_v = j.at("adam_v").get<std::vector<double>>();
    c.adam_t = j.at("adam_t");
    c.steps = j.at("steps");
    c.updates = j.at("updates");
    c.episodes = j.at("episodes");
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

void write_trajectory(const Trajectory& traj, const fs::path& path) {
  std::ostringstream out;
  out << "# " << traj.metadata << '\n';
  out << "t,x,y,z,qw,qx,qy,qz,action,r_A,reward,visit_count,iou\n";
  for (const TrajectoryRow& r : traj.rows) {
    const auto p = r.pose.to_array();
    out << r.t;
    for (double v : p) out << ',' << fmt17(v);
    out << ',' << r.action << ',' << fmt17(r.contact) << ',' << fmt17(r.reward) << ','
        << r.visit_count << ',' << fmt17(r.iou) << '\n';
  }
  write_file_atomic(path, out.str());
}

Trajectory read_trajectory(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read trajectory " + path.string());
  Trajectory traj;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw Error(ErrorCode::kParse, path.string() + ":1: missing metadata line");
  }
  traj.metadata = line.substr(2);
  if (!std::getline(in, line) || line.rfind("t,x,y,z", 0) != 0) {
    throw Error(ErrorCode::kParse, path.string() + ":2: missing header");
  }
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 13 || line.back() == ',') break;
    try {
      TrajectoryRow r;
      std::size_t used = 0;
      r.t = std::stoi(cells[0], &used);
      std::array<double, 7> p{};
      for (int k = 0; k < 7; ++k) p[k] = std::stod(cells[1 + k]);
      r.pose = SensorPose::from_array(p);
      r.action = std::stoi(cells[8]);
      r.contact = std::stod(cells[9]);
      r.reward = std::stod(cells[10]);
      r.visit_count = std::stoull(cells[11]);
      r.iou = std::stod(cells[12]);
      traj.rows.push_back(r);
    } catch (const std::exception&) {
      break;
    }
  }
  // A final line without its newline may have been cut mid-number.
  if (!traj.rows.empty()) {
    std::ifstream raw(path, std::ios::binary | std::ios::ate);
    const auto size = static_cast<std::streamoff>(raw.tellg());
    if (size > 0) {
      raw.seekg(size - 1);
      char last = 0;
      raw.get(last);
      if (last != '\n') traj.rows.pop_back();
    }
  }
  return traj;
}

std::vector<Vec3> voxel_filter(const std::vector<Vec3>& points, double voxel) {
  struct KeyHash {
    std::size_t operator()(const std::tuple<long long, long long, long long>& k) const {
      const auto [a, b, c] = k;
      std::uint64_t h = static_cast<std::uint64_t>(a) * 0x9E3779B97F4A7C15ULL;
      h ^= static_cast<std::uint64_t>(b) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
      h ^= static_cast<std::uint64_t>(c) * 0x165667B19E3779F9ULL + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_set<std::tuple<long long, long long, long long>, KeyHash> seen;
  std::vector<Vec3> out;
  for (const Vec3& p : points) {
    const auto key = std::make_tuple(static_cast<long long>(std::floor(p.x() / voxel)),
                                     static_cast<long long>(std::floor(p.y() / voxel)),
                                     static_cast<long long>(std::floor(p.z() / voxel)));
    if (seen.insert(key).second) out.push_back(p);
  }
  return out;
}

EpisodeOutcome run_episode(Env& env, Agent& agent, std::uint64_t seed, bool mask,
                           const std::string& metadata) {
  EpisodeOutcome out;
  out.trajectory.metadata = metadata;
  const ResetResult reset = env.reset(seed);
  TrajectoryRow row0;
  row0.pose = reset.pose;
  row0.contact = contact_area(env.observation(), env.config().sensor.contact_epsilon);
  row0.iou = reset.iou;
  out.trajectory.rows.push_back(row0);

  auto* policy = dynamic_cast<PolicyAgent*>(&agent);
  ExplorationState state = reset.state;
  StepResult r;
  while (!env.done()) {
    int action;
    if (mask && policy != nullptr) {
      const std::vector<std::uint8_t> allowed = in_workspace_mask(env);
      action = policy->act(state, allowed);
    } else {
      action = agent.act(state);
    }
    r = env.step(action);
    TrajectoryRow row;
    row.t = r.info.t;
    row.pose = r.info.pose;
    row.action = action;
    row.contact = r.info.contact;
    row.reward = r.reward;
    row.visit_count = r.info.visit_count;
    row.iou = r.info.iou;
    out.trajectory.rows.push_back(row);
    state = r.state;
  }
  out.summary.seed = seed;
  out.summary.steps = env.steps();
  out.summary.iou = env.coverage().iou();
  out.summary.termination = r.info.termination;
  out.cloud = voxel_filter(env.coverage().observed(), kExportVoxel);
  out.summary.chamfer = out.cloud.empty()
                            ? std::numeric_limits<double>::quiet_NaN()
                            : chamfer_l1(env.scene().gt_samples, out.cloud);
  return out;
}

TrainResult cmd_train(const RunConfig& cfg, const TrainOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  const EpisodeConfig episode = cfg.training_episode();
  std::vector<std::shared_ptr<const Scene>> scenes;
  for (const std::string& obj : cfg.train_objects) {
    if (!is_primitive(obj) && !fs::exists(obj)) {
      throw Error(ErrorCode::kIo, "mesh not found: " + obj);
    }
  }
  for (const std::string& obj : cfg.train_objects) {
    scenes.push_back(load_scene(obj, cfg, episode));
  }

  fs::create_directories(opt.out_dir);
  Trainer trainer(scenes, episode, cfg.train);
  const std::uint64_t hash = training_hash(cfg);
  if (opt.resume) {
    Checkpoint c = load_checkpoint(*opt.resume);
    if (c.hash != hash) {
      throw Error(ErrorCode::kInvalidConfig,
                  "checkpoint config hash " + hex64(c.hash) + " does not match " + hex64(hash));
    }
    if (!(c.net == trainer.network().spec())) {
      throw Error(ErrorCode::kShapeMismatch, "checkpoint network does not match the config");
    }
    trainer.restore(std::move(c.params), std::move(c.adam_m), std::move(c.adam_v), c.adam_t,
                    c.steps, c.updates, c.episodes);
  }

  const auto mode = opt.resume ? std::ios::app : std::ios::trunc;
  std::ofstream curve(opt.out_dir / "curve.csv", mode);
  std::ofstream updates(opt.out_dir / "updates.csv", mode);
  if (!curve || !updates) throw Error(ErrorCode::kIo, "cannot write to " + opt.out_dir.string());
  if (!opt.resume) {
    curve << "step,episode,object,length,iou,return,termination\n";
    updates << "step,update,policy_loss,value_loss,entropy,approx_kl,clip_fraction,grad_norm\n";
  }

  json episodes = json::array();
  const fs::path ckpt_path = opt.out_dir / "checkpoint.json";
  TrainCallbacks cb;
  cb.on_episode = [&](const EpisodeRecord& e) {
    curve << e.step << ',' << e.episode << ',' << e.object << ',' << e.length << ','
          << fmt17(e.iou) << ',' << fmt17(e.episode_return) << ','
          << termination_name(e.termination) << '\n';
    episodes.push_back({{"episode", e.episode},
                        {"object", e.object},
                        {"steps", e.length},
                        {"iou", e.iou},
                        {"termination", std::string(termination_name(e.termination))}});
  };
  cb.on_update = [&](const UpdateRecord& u) {
    updates << u.step << ',' << u.update << ',' << fmt17(u.stats.policy_loss) << ','
            << fmt17(u.stats.value_loss) << ',' << fmt17(u.stats.entropy) << ','
            << fmt17(u.stats.approx_kl) << ',' << fmt17(u.stats.clip_fraction) << ','
            << fmt17(u.stats.grad_norm) << '\n';
    curve.flush();
    updates.flush();
    if (opt.log != nullptr && u.update % 5 == 0) {
      std::ostringstream s;
      s << "step " << u.step << " update " << u.update << " entropy " << u.stats.entropy
        << " value_loss " << u.stats.value_loss;
      logline(opt.log, s.str());
    }
  };
  cb.on_checkpoint = [&] {
    Checkpoint c;
    c.config = dump_config(cfg);
    c.hash = hash;
    c.net = trainer.network().spec();
    c.params = trainer.network().params();
    c.adam_m = trainer.optimizer().m();
    c.adam_v = trainer.optimizer().v();
    c.adam_t = trainer.optimizer().steps();
    c.steps = trainer.steps();
    c.updates = trainer.updates();
    c.episodes = trainer.episodes();
    save_checkpoint(c, ckpt_path);
  };
  trainer.run(cb);

  json manifest = manifest_base("train", cfg, cfg.train.seed);
  manifest["resumed_from"] = opt.resume ? json(opt.resume->string()) : json(nullptr);
  manifest["steps"] = trainer.steps();
  manifest["updates"] = trainer.updates();
  manifest["checkpoint"] = ckpt_path.string();
  manifest["episodes"] = episodes;
  manifest["wall_clock_s"] = seconds_since(t0);
  write_file_atomic(opt.out_dir / "manifest.json", manifest.dump(2) + "\n");

  TrainResult result;
  result.checkpoint = ckpt_path;
  result.steps = trainer.steps();
  result.updates = trainer.updates();
  result.episodes = trainer.episodes();
  return result;
}

namespace {

std::unique_ptr<Agent> make_agent(const RunConfig& cfg, const std::string& spec,
                                  std::uint64_t seed) {
  if (spec == "random") return std::make_unique<RandomAgent>(seed);
  if (!fs::exists(spec)) throw Error(ErrorCode::kIo, "checkpoint not found: " + spec);
  Checkpoint c = load_checkpoint(spec);
  const RunConfig trained = parse_config(c.config, spec);
  if (trained.episode.state_mode != cfg.episode.state_mode ||
      trained.episode.window != cfg.episode.window) {
    throw Error(ErrorCode::kShapeMismatch,
                "checkpoint state mode " + std::string(state_mode_name(trained.episode.state_mode)) +
                    " (window " + std::to_string(trained.episode.window) +
                    ") does not match requested " +
                    std::string(state_mode_name(cfg.episode.state_mode)) + " (window " +
                    std::to_string(cfg.episode.window) + ")");
  }
  const nn::NetSpec expected = default_net_spec(cfg.episode);
  if (c.net.channels != expected.channels || c.net.height != expected.height ||
      c.net.width != expected.width) {
    throw Error(ErrorCode::kShapeMismatch, "checkpoint input shape does not match the sensor");
  }
  nn::PolicyNetwork net(c.net, 0);
  if (c.params.size() != net.params().size()) {
    throw Error(ErrorCode::kShapeMismatch, "checkpoint parameter count mismatch");
  }
  net.params() = std::move(c.params);
  return std::make_unique<PolicyAgent>(std::move(net), cfg.eval.greedy, seed);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

EvalResult cmd_eval(const RunConfig& cfg, const EvalOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  EpisodeConfig episode = cfg.episode;
  episode.keep_observed = true;
  const bool scripted = opt.agent == "scripted";
  if (scripted) episode.spawn = SpawnMode::kTop;
  // Validate the agent before the scene so bad checkpoints fail fast.
  std::unique_ptr<Agent> probe =
      scripted ? nullptr : make_agent(cfg, opt.agent, cfg.eval.seed);
  auto scene = load_scene(opt.object, cfg, episode);
  Env env(scene, episode);

  if (opt.write_artifacts) {
    fs::create_directories(opt.out_dir);
    write_ply(scene->gt_samples, opt.out_dir / "gt.ply");
  }
  EvalResult result;
  std::vector<double> ious, chamfers, steps;
  json rows = json::array();
  for (int i = 0; i < cfg.eval.episodes; ++i) {
    const std::uint64_t seed = mix_seed(cfg.eval.seed, static_cast<std::uint64_t>(i));
    const json meta{{"object", opt.object},
                    {"agent", opt.agent},
                    {"episode", i},
                    {"seed", seed},
                    {"config", dump_config(cfg)}};
    EpisodeOutcome o;
    if (scripted) {
      const ScriptedRun run = scripted_boustrophedon(env);
      o.trajectory.metadata = meta.dump();
      o.summary.seed = seed;
      o.summary.steps = env.steps();
      o.summary.iou = env.coverage().iou();
      o.summary.termination =
          run.reached_target ? Termination::kIouTarget : Termination::kNone;
      o.cloud = voxel_filter(env.coverage().observed(), kExportVoxel);
      o.summary.chamfer = chamfer_l1(scene->gt_samples, o.cloud);
    } else {
      std::unique_ptr<Agent> agent =
          make_agent(cfg, opt.agent, mix_seed(cfg.eval.seed, 1000 + static_cast<std::uint64_t>(i)));
      o = run_episode(env, *agent, seed, cfg.eval.mask_exits, meta.dump());
    }
    o.summary.episode = i;
    result.episodes.push_back(o.summary);
    ious.push_back(o.summary.iou);
    chamfers.push_back(o.summary.chamfer);
    steps.push_back(o.summary.steps);
    rows.push_back(episode_json(o.summary));
    if (opt.write_artifacts) {
      if (!scripted) write_trajectory(o.trajectory, opt.out_dir / ("traj_" + std::to_string(i) + ".csv"));
      write_ply(o.cloud, opt.out_dir / ("cloud_" + std::to_string(i) + ".ply"));
      write_pgm(env.observation(), opt.out_dir / ("depth_" + std::to_string(i) + ".pgm"));
    }
    std::ostringstream s;
    s << "episode " << i << " steps " << o.summary.steps << " iou " << o.summary.iou
      << " chamfer " << o.summary.chamfer << " " << termination_name(o.summary.termination);
    logline(opt.log, s.str());
  }
  result.mean_iou = mean_of(ious);
  result.std_iou = std_of(ious);
  result.mean_chamfer = mean_of(chamfers);
  result.std_chamfer = std_of(chamfers);
  result.mean_steps = mean_of(steps);

  if (opt.write_artifacts) {
    const json aggregate{{"mean_iou", result.mean_iou},     {"std_iou", result.std_iou},
                         {"mean_chamfer", result.mean_chamfer},
                         {"std_chamfer", result.std_chamfer}, {"mean_steps", result.mean_steps}};
    const json summary{{"object", opt.object},
                       {"agent", opt.agent},
                       {"episodes", rows},
                       {"aggregate", aggregate}};
    write_file_atomic(opt.out_dir / "eval.json", summary.dump(2) + "\n");

    std::ostringstream csv;
    csv << "episode,seed,steps,iou,chamfer,termination\n";
    for (const EpisodeSummary& e : result.episodes) {
      csv << e.episode << ',' << e.seed << ',' << e.steps << ',' << fmt17(e.iou) << ','
          << fmt17(e.chamfer) << ',' << termination_name(e.termination) << '\n';
    }
    csv << "mean,," << fmt17(result.mean_steps) << ',' << fmt17(result.mean_iou) << ','
        << fmt17(result.mean_chamfer) << ",\n";
    write_file_atomic(opt.out_dir / "eval.csv", csv.str());

    json manifest = manifest_base("eval", cfg, cfg.eval.seed);
    manifest["object"] = opt.object;
    manifest["agent"] = opt.agent;
    manifest["episodes"] = rows;
    manifest["aggregate"] = aggregate;
    manifest["wall_clock_s"] = seconds_since(t0);
    write_file_atomic(opt.out_dir / "manifest.json", manifest.dump(2) + "\n");
  }
  return result;
}

ReplayResult cmd_replay(const fs::path& log, const std::string& object, double tolerance) {
  const Trajectory traj = read_trajectory(log);
  json meta;
  try {
    meta = json::parse(traj.metadata);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, log.string() + ":1: " + e.what());
  }
  const RunConfig cfg = parse_config(meta.at("config").get<std::string>(), log.string());
  EpisodeConfig episode = cfg.episode;
  episode.keep_observed = true;
  const std::string obj = object.empty() ? meta.at("object").get<std::string>() : object;
  auto scene = load_scene(obj, cfg, episode);
  Env env(scene, episode);

  ReplayResult result;
  if (traj.rows.empty()) return result;
  auto mismatch = [&](std::size_t row, const std::string& column, double logged, double got) {
    throw Error(ErrorCode::kReplayMismatch,
                "row " + std::to_string(row) + " (t=" + std::to_string(traj.rows[row].t) +
                    ") column " + column + ": logged " + fmt17(logged) + ", replayed " +
                    fmt17(got));
  };
  auto check_pose = [&](std::size_t row, const SensorPose& got) {
    static const char* names[7] = {"x", "y", "z", "qw", "qx", "qy", "qz"};
    const auto a = traj.rows[row].pose.to_array();
    const auto b = got.to_array();
    for (int k = 0; k < 7; ++k) {
      if (!(std::abs(a[k] - b[k]) <= tolerance)) mismatch(row, names[k], a[k], b[k]);
    }
  };
  auto check = [&](std::size_t row, const std::string& column, double logged, double got) {
    if (!(std::abs(logged - got) <= tolerance)) mismatch(row, column, logged, got);
  };

  const ResetResult reset = env.reset(meta.at("seed").get<std::uint64_t>());
  check_pose(0, reset.pose);
  check(0, "iou", traj.rows[0].iou, reset.iou);
  result.rewards.push_back(0.0);
  result.iou.push_back(reset.iou);
  for (std::size_t i = 1; i < traj.rows.size(); ++i) {
    const TrajectoryRow& row = traj.rows[i];
    if (env.done()) {
      throw Error(ErrorCode::kReplayMismatch,
                  "row " + std::to_string(i) + ": episode already terminated on replay");
    }
    if (row.action < 0 || row.action >= kNumActions) {
      throw Error(ErrorCode::kReplayMismatch, "row " + std::to_string(i) + ": invalid action");
    }
    const StepResult r = env.step(row.action);
    check_pose(i, r.info.pose);
    check(i, "r_A", row.contact, r.info.contact);
    check(i, "reward", row.reward, r.reward);
    check(i, "visit_count", static_cast<double>(row.visit_count),
          static_cast<double>(r.info.visit_count));
    check(i, "iou", row.iou, r.info.iou);
    result.rewards.push_back(r.reward);
    result.iou.push_back(r.info.iou);
  }
  result.rows = traj.rows.size();
  return result;
}

MetricsResult cmd_metrics(const fs::path& gt, const fs::path& observed, double delta) {
  const std::vector<Vec3> a = read_ply(gt);
  const std::vector<Vec3> b = read_ply(observed);
  MetricsResult r;
  r.gt_points = a.size();
  r.observed_points = b.size();
  r.iou = surface_iou(a, b, delta);
  if (!a.empty() && !b.empty()) r.chamfer = chamfer_l1(a, b);
  return r;
}

void cmd_gen_mesh(const std::string& name, const fs::path& out, double scale) {
  if (!is_primitive(name)) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown primitive '" + name + "' (cube, sphere, cylinder, capsule)");
  }
  TriangleMesh m = load_object(name, scale);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  const std::string ext = out.extension().string();
  if (ext == ".obj") {
    write_obj(m, out);
  } else if (ext == ".stl") {
    write_stl(m, out);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "output must end in .obj or .stl");
  }
}

}  // namespace tactex
