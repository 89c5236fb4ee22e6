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

#include "tactex/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "tactex/error.hpp"

namespace tactex {
namespace {

[[noreturn]] void PlyError(const std::filesystem::path& path, std::size_t line,
                           const std::string& what) {
  std::ostringstream msg;
  msg << path.string() << ":" << line << ": " << what;
  throw Error(ErrorCode::kParse, msg.str());
}

}  // namespace

std::vector<Vec3> read_ply(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line != "ply") PlyError(path, 1, "missing 'ply' magic");
  std::size_t vertex_count = 0;
  bool have_vertex = false;
  bool in_vertex = false;
  int nprops = 0;
  int ix = -1, iy = -1, iz = -1;
  bool header_done = false;
  while (next_line()) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt != "ascii") PlyError(path, lineno, "only ascii PLY is supported");
    } else if (tag == "element") {
      std::string name;
      long long count = -1;
      ls >> name >> count;
      if (count < 0) PlyError(path, lineno, "bad element count");
      in_vertex = name == "vertex";
      if (in_vertex) {
        have_vertex = true;
        vertex_count = static_cast<std::size_t>(count);
      } else if (!have_vertex) {
        PlyError(path, lineno, "vertex element must come first");
      }
    } else if (tag == "property") {
      if (!in_vertex) continue;
      std::string type, name;
      ls >> type >> name;
      if (type == "list") PlyError(path, lineno, "list property on vertex element");
      if (name == "x") ix = nprops;
      if (name == "y") iy = nprops;
      if (name == "z") iz = nprops;
      ++nprops;
    } else if (tag == "end_header") {
      header_done = true;
      break;
    } else if (tag != "comment" && tag != "obj_info" && !tag.empty()) {
      PlyError(path, lineno, "unexpected header line '" + line + "'");
    }
  }
  if (!header_done) PlyError(path, lineno, "missing end_header");
  if (!have_vertex) return {};
  if (ix < 0 || iy < 0 || iz < 0) PlyError(path, lineno, "vertex element lacks x, y, z");

  std::vector<Vec3> points;
  points.reserve(vertex_count);
  std::vector<double> values(nprops);
  for (std::size_t i = 0; i < vertex_count; ++i) {
    if (!next_line()) PlyError(path, lineno + 1, "unexpected end of file");
    std::istringstream ls(line);
    for (int k = 0; k < nprops; ++k) {
      std::string tok;
      if (!(ls >> tok)) PlyError(path, lineno, "too few values on vertex line");
      char* end = nullptr;
      values[k] = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') {
        PlyError(path, lineno, "bad number '" + tok + "'");
      }
    }
    const Vec3 p(values[ix], values[iy], values[iz]);
    if (!p.allFinite()) PlyError(path, lineno, "non-finite coordinate");
    points.push_back(p);
  }
  return points;
}

void write_ply(const std::vector<Vec3>& points, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "ply\nformat ascii 1.0\nelement vertex " << points.size()
      << "\nproperty double x\nproperty double y\nproperty double z\nend_header\n";
  out << std::setprecision(17);
  for (const Vec3& p : points) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  write_file_atomic(path, out.str());
}

void write_pgm(const TactileDepthImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << "P5\n" << img.width << ' ' << img.height << "\n65535\n";
  for (double d : img.depths) {
    const double counts = std::clamp(std::round(d * kPgmCountsPerMeter), 0.0, 65535.0);
    const auto v = static_cast<std::uint16_t>(counts);
    const char bytes[2] = {static_cast<char>(v >> 8), static_cast<char>(v & 0xFF)};
    out.write(bytes, 2);
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out << contents;
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::filesystem::path output_root(const std::filesystem::path& fallback) {
  const char* env = std::getenv("TACTEX_OUTPUT_DIR");
  return env != nullptr && *env != '\0' ? std::filesystem::path(env) : fallback;
}

}  // namespace tactex
