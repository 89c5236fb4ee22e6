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

#include <sys/wait.h>

#include <cstdio>

#include <doctest.h>
#include <json.hpp>

#include "helpers.hpp"

using nlohmann::json;

namespace {

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

Result run(const std::string& args, const std::filesystem::path& dir) {
  const auto err_path = dir / "stderr.txt";
  const std::string cmd = std::string(TACTEX_CLI) + " " + args + " 2> " + err_path.string();
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = testing::read_text(err_path);
  return r;
}

}  // namespace

TEST_CASE("gen-mesh and metrics") {
  const auto dir = testing::scratch("cli_metrics");
  Result r = run("gen-mesh cube " + (dir / "cube.obj").string(), dir);
  CHECK(r.status == 0);
  CHECK(std::filesystem::exists(dir / "cube.obj"));

  // Build two clouds through a short random evaluation.
  r = run("eval --checkpoint random --mesh cube --episodes 1 --set episode.horizon=100 "
          "--set episode.gt_samples=3000 --out " + (dir / "ev").string(), dir);
  REQUIRE(r.status == 0);
  const json summary = json::parse(r.out);
  CHECK(summary.contains("mean_iou"));

  r = run("metrics " + (dir / "ev/gt.ply").string() + " " + (dir / "ev/gt.ply").string(), dir);
  REQUIRE(r.status == 0);
  json m = json::parse(r.out);
  CHECK(m["iou"] == 1.0);
  CHECK(m["chamfer"] == 0.0);
  CHECK(m["delta"] == 0.005);

  r = run("metrics " + (dir / "ev/gt.ply").string() + " " + (dir / "ev/cloud_0.ply").string() +
              " --delta 0.01", dir);
  REQUIRE(r.status == 0);
  m = json::parse(r.out);
  CHECK(m["iou"].get<double>() > 0.0);
  CHECK(m["iou"].get<double>() < 1.0);

  testing::write_text(dir / "empty.ply", "ply\nformat ascii 1.0\nelement vertex 0\nproperty float x\n"
                                         "property float y\nproperty float z\nend_header\n");
  r = run("metrics " + (dir / "ev/gt.ply").string() + " " + (dir / "empty.ply").string(), dir);
  REQUIRE(r.status == 0);
  m = json::parse(r.out);
  CHECK(m["iou"] == 0.0);
  CHECK(m["chamfer"].is_null());

  testing::write_text(dir / "bad.ply", "ply\nformat ascii 1.0\nelement vertex 1\nproperty float x\n"
                                       "property float y\nproperty float z\nend_header\n1 2\n");
  r = run("metrics " + (dir / "bad.ply").string() + " " + (dir / "bad.ply").string(), dir);
  CHECK(r.status == 1);
  CHECK(r.err.rfind("error parse: ", 0) == 0);
  CHECK(r.err.find("bad.ply:8:") != std::string::npos);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
}

TEST_CASE("replay round trip through the command line") {
  const auto dir = testing::scratch("cli_replay");
  Result r = run("eval --checkpoint random --mesh sphere --episodes 1 --set episode.horizon=200 "
                 "--set episode.gt_samples=3000 --out " + (dir / "ev").string(), dir);
  REQUIRE(r.status == 0);
  r = run("replay " + (dir / "ev/traj_0.csv").string(), dir);
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["match"] == true);
  r = run("replay " + (dir / "ev/traj_0.csv").string() + " --mesh cube", dir);
  CHECK(r.status == 1);
  CHECK(r.err.rfind("error replay_mismatch: ", 0) == 0);
}

TEST_CASE("errors exit nonzero with one machine-readable line") {
  const auto dir = testing::scratch("cli_errors");
  Result r = run("train --set ppo.bogus=1 --out " + (dir / "t").string(), dir);
  CHECK(r.status == 1);
  CHECK(r.err.rfind("error invalid_config: ", 0) == 0);
  CHECK(r.err.find("ppo.bogus") != std::string::npos);

  r = run("train --set train.objects=cube," + (dir / "nope.obj").string() + " --out " +
              (dir / "t").string(), dir);
  CHECK(r.status == 1);
  CHECK(r.err.rfind("error io: ", 0) == 0);

  r = run("eval --checkpoint " + (dir / "missing.json").string() + " --out " + (dir / "e").string(), dir);
  CHECK(r.status == 1);
  CHECK(r.err.rfind("error io: ", 0) == 0);

  r = run("eval --checkpoint scripted --mesh sphere --out " + (dir / "e").string(), dir);
  CHECK(r.status == 1);
  CHECK(r.err.rfind("error unsupported: ", 0) == 0);

  r = run("frobnicate", dir);
  CHECK(r.status == 2);
  r = run("metrics only_one.ply", dir);
  CHECK(r.status == 2);
}

TEST_CASE("train smoke run records the modes") {
  const auto dir = testing::scratch("cli_train");
  Result r = run("train --steps 300 --reward amb --state tta --set train.rollout=150 "
                 "--set ppo.epochs=1 --set episode.gt_samples=3000 --set train.horizon=100 --out " +
                     (dir / "t").string(), dir);
  REQUIRE(r.status == 0);
  const json out = json::parse(r.out);
  CHECK(out["steps"] == 300);
  const json manifest = json::parse(testing::read_text(dir / "t/manifest.json"));
  const std::string config = manifest["config"];
  CHECK(config.find("mode = amb") != std::string::npos);
  CHECK(config.find("mode = tta") != std::string::npos);
  const std::string curve = testing::read_text(dir / "t/curve.csv");
  CHECK(curve.rfind("step,episode,object,length,iou", 0) == 0);
  CHECK(curve.find("nan") == std::string::npos);

  ::setenv("TACTEX_OUTPUT_DIR", (dir / "env_out").c_str(), 1);
  r = run("gen-mesh sphere " + (dir / "s.stl").string(), dir);
  r = run("eval --checkpoint random --mesh " + (dir / "s.stl").string() +
              " --episodes 1 --set episode.horizon=50 --set episode.gt_samples=2000", dir);
  ::unsetenv("TACTEX_OUTPUT_DIR");
  CHECK(r.status == 0);
  CHECK(std::filesystem::exists(dir / "env_out" / "eval" / "eval.json"));
}
