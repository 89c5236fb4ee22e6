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

#include "tactex/mesh_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

#include "tactex/error.hpp"

namespace tactex {
namespace {

std::string ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void ParseError(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
  std::ostringstream msg;
  msg << path.string() << ":" << line << ": " << what;
  throw Error(ErrorCode::kParse, msg.str());
}

TriangleMesh ParseObj(const std::string& text, const std::filesystem::path& path,
                      double scale) {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 v;
      std::string tok;
      for (int k = 0; k < 3; ++k) {
        if (!(ls >> tok)) ParseError(path, lineno, "vertex needs 3 coordinates");
        try {
          v[k] = std::stod(tok);
        } catch (const std::out_of_range&) {
          v[k] = std::numeric_limits<double>::infinity();
        } catch (const std::exception&) {
          ParseError(path, lineno, "bad vertex coordinate '" + tok + "'");
        }
      }
      vertices.push_back(v * scale);
    } else if (tag == "f") {
      std::vector<std::uint32_t> poly;
      std::string tok;
      while (ls >> tok) {
        const std::string head = tok.substr(0, tok.find('/'));
        long idx = 0;
        try {
          idx = std::stol(head);
        } catch (const std::exception&) {
          ParseError(path, lineno, "bad face index '" + tok + "'");
        }
        const long n = static_cast<long>(vertices.size());
        const long resolved = idx < 0 ? n + idx : idx - 1;
        if (idx == 0 || resolved < 0 || resolved >= n) {
          ParseError(path, lineno, "face index out of range '" + tok + "'");
        }
        poly.push_back(static_cast<std::uint32_t>(resolved));
      }
      if (poly.size() < 3) ParseError(path, lineno, "face needs at least 3 vertices");
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        triangles.push_back({poly[0], poly[k], poly[k + 1]});
      }
    }
  }
  return TriangleMesh::create(std::move(vertices), std::move(triangles));
}

// Welds bitwise-identical positions, which STL stores once per facet.
class Welder {
 public:
  std::uint32_t add(const Vec3& v) {
    const auto key = std::make_tuple(v.x(), v.y(), v.z());
    auto [it, inserted] = index_.try_emplace(key, static_cast<std::uint32_t>(vertices.size()));
    if (inserted) vertices.push_back(v);
    return it->second;
  }
  std::vector<Vec3> vertices;

 private:
  std::map<std::tuple<double, double, double>, std::uint32_t> index_;
};

TriangleMesh ParseStlAscii(const std::string& text, const std::filesystem::path& path,
                           double scale) {
  Welder welder;
  std::vector<Triangle> triangles;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::uint32_t> facet;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    tag = Lower(tag);
    if (tag == "vertex") {
      Vec3 v;
      if (!(ls >> v.x() >> v.y() >> v.z())) {
        ParseError(path, lineno, "vertex needs 3 coordinates");
      }
      facet.push_back(welder.add(v * scale));
    } else if (tag == "endloop") {
      if (facet.size() != 3) ParseError(path, lineno, "facet must have 3 vertices");
      triangles.push_back({facet[0], facet[1], facet[2]});
      facet.clear();
    }
  }
  return TriangleMesh::create(std::move(welder.vertices), std::move(triangles));
}

TriangleMesh ParseStlBinary(const std::string& data, const std::filesystem::path& path,
                            double scale) {
  std::uint32_t count = 0;
  std::memcpy(&count, data.data() + 80, sizeof(count));
  const std::size_t expected = 84 + static_cast<std::size_t>(count) * 50;
  if (data.size() < expected) {
    throw Error(ErrorCode::kParse, path.string() + ": truncated binary STL");
  }
  Welder welder;
  std::vector<Triangle> triangles;
  triangles.reserve(count);
  for (std::uint32_t t = 0; t < count; ++t) {
    const char* rec = data.data() + 84 + static_cast<std::size_t>(t) * 50 + 12;
    Triangle tri;
    for (int k = 0; k < 3; ++k) {
      float xyz[3];
      std::memcpy(xyz, rec + 12 * k, sizeof(xyz));
      tri[k] = welder.add(Vec3(xyz[0], xyz[1], xyz[2]) * scale);
    }
    triangles.push_back(tri);
  }
  return TriangleMesh::create(std::move(welder.vertices), std::move(triangles));
}

bool LooksLikeBinaryStl(const std::string& data) {
  if (data.size() < 84) return false;
  std::uint32_t count = 0;
  std::memcpy(&count, data.data() + 80, sizeof(count));
  return data.size() == 84 + static_cast<std::size_t>(count) * 50;
}

}  // namespace

TriangleMesh load_mesh(const std::filesystem::path& path, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kInvalidArgument, "mesh scale must be positive");
  }
  const std::string data = ReadAll(path);
  const std::string ext = Lower(path.extension().string());
  if (ext == ".obj") return ParseObj(data, path, scale);
  if (ext == ".stl") {
    if (LooksLikeBinaryStl(data)) return ParseStlBinary(data, path, scale);
    return ParseStlAscii(data, path, scale);
  }
  throw Error(ErrorCode::kUnsupported, "unknown mesh format: " + path.string());
}

void write_obj(const TriangleMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << std::setprecision(17);
  for (const Vec3& v : mesh.vertices()) {
    out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
  for (const Triangle& t : mesh.triangles()) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
}

void write_stl(const TriangleMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  char header[80] = "tactex binary stl";
  out.write(header, sizeof(header));
  const auto count = static_cast<std::uint32_t>(mesh.triangles().size());
  out.write(reinterpret_cast<const char*>(&count), sizeof(count));
  for (std::size_t t = 0; t < mesh.triangles().size(); ++t) {
    float rec[12];
    const Vec3 n = mesh.triangle_normal(t);
    for (int k = 0; k < 3; ++k) rec[k] = static_cast<float>(n[k]);
    for (int v = 0; v < 3; ++v) {
      const Vec3& p = mesh.vertices()[mesh.triangles()[t][v]];
      for (int k = 0; k < 3; ++k) rec[3 + 3 * v + k] = static_cast<float>(p[k]);
    }
    out.write(reinterpret_cast<const char*>(rec), sizeof(rec));
    const std::uint16_t attr = 0;
    out.write(reinterpret_cast<const char*>(&attr), sizeof(attr));
  }
}

}  // namespace tactex
