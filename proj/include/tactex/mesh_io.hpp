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

#include "tactex/geometry.hpp"

namespace tactex {

// Reads Wavefront OBJ (polygons are fan-triangulated, negative indices
// allowed) or STL (binary or ASCII; coincident vertices are welded).
// Coordinates are multiplied by `scale` to obtain meters.
TriangleMesh load_mesh(const std::filesystem::path& path, double scale = 1.0);

void write_obj(const TriangleMesh& mesh, const std::filesystem::path& path);
void write_stl(const TriangleMesh& mesh, const std::filesystem::path& path);

}  // namespace tactex
