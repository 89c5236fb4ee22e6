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

#include <string_view>

#include "tactex/geometry.hpp"

namespace tactex {

// Procedural watertight meshes with outward-facing triangles, centered at
// the origin. Cylinder and capsule axes are along z.
TriangleMesh make_box(const Vec3& size);
TriangleMesh make_icosphere(double radius, int subdivisions);
TriangleMesh make_cylinder(double radius, double length, int segments);
TriangleMesh make_capsule(double radius, double length, int segments, int rings);

// Primitive by name with the default dimensions used for training and
// evaluation: "cube" (5.7 cm), "sphere" (r = 3 cm), "cylinder"
// (r = 2 cm, 6 cm long), "capsule" (r = 2 cm, 4 cm straight section).
TriangleMesh make_primitive(std::string_view name);

// True when every vertex lies on the faces of the mesh's bounding box and
// the area equals the box area, i.e. the mesh is an axis-aligned box.
bool is_axis_aligned_box(const TriangleMesh& mesh, double tolerance = 1e-9);

}  // namespace tactex
