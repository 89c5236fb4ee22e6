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

#include <cstdlib>
#include <string>

#include "tactex/simd/kernels.hpp"

namespace tactex::simd {

#if defined(TACTEX_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(TACTEX_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

Isa SelectIsa() {
  const char* forced = std::getenv("TACTEX_SIMD");
  if (forced != nullptr && std::string(forced) == "scalar") return Isa::kScalar;
  return avx2_kernels() != nullptr ? Isa::kAvx2 : Isa::kScalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = SelectIsa();
  return isa;
}

const KernelTable& kernels() {
  static const KernelTable& table =
      active_isa() == Isa::kAvx2 ? *avx2_kernels() : scalar_kernels();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace tactex::simd
