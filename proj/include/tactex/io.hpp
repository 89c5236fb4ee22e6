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

#include <filesystem>
#include <string>
#include <vector>

#include "tactex/geometry.hpp"
#include "tactex/sensor.hpp"

namespace tactex {

// ASCII PLY with a single "vertex" element; x, y, z are read from their
// declared property positions and other properties are ignored.
std::vector<Vec3> read_ply(const std::filesystem::path& path);
void write_ply(const std::vector<Vec3>& points, const std::filesystem::path& path);

// 16-bit binary PGM (P5, big-endian). One count is 0.1 micrometer of
// penetration, so the full 1.5 mm gel maps to 15000.
inline constexpr double kPgmCountsPerMeter = 1e7;
void write_pgm(const TactileDepthImage& img, const std::filesystem::path& path);

// Writes `contents` to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// Output root: $TACTEX_OUTPUT_DIR when set, else `fallback`.
std::filesystem::path output_root(const std::filesystem::path& fallback);

}  // namespace tactex
