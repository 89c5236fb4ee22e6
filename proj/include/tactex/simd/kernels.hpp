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

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace tactex::simd {

// Inner loops shared by the coverage, metrics and state code. Every kernel
// has a scalar reference implementation; wider variants are selected once at
// startup. All kernels evaluate the same operations in the same order as
// the scalar code, so results are bitwise identical across dispatch levels.
struct KernelTable {
  const char* name;

  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  // Index of the first point with squared distance <= r2 to q, or n.
  std::size_t (*first_within)(const double q[3], const double* xs,
                              const double* ys, const double* zs,
                              std::size_t n, double r2);
  // Minimum squared distance from q to the points; +inf for n == 0.
  double (*min_dist2)(const double q[3], const double* xs, const double* ys,
                      const double* zs, std::size_t n);
};

enum class Isa { kScalar, kAvx2 };

const KernelTable& scalar_kernels();
// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();

// The active table. Honors TACTEX_SIMD=scalar|avx2 on first use.
const KernelTable& kernels();
Isa active_isa();
std::string_view isa_name(Isa isa);

}  // namespace tactex::simd
