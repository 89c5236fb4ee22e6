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

#include <immintrin.h>

#include <limits>

#include "tactex/simd/kernels.hpp"

namespace tactex::simd {
namespace {

void AxpyAvx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i,
                     _mm256_add_pd(vy, _mm256_mul_pd(va, _mm256_loadu_pd(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

inline __m256d Dist2(__m256d qx, __m256d qy, __m256d qz, const double* xs,
                     const double* ys, const double* zs) {
  const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs), qx);
  const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys), qy);
  const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(zs), qz);
  return _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                       _mm256_mul_pd(dz, dz));
}

std::size_t FirstWithinAvx2(const double q[3], const double* xs,
                            const double* ys, const double* zs, std::size_t n,
                            double r2) {
  const __m256d qx = _mm256_set1_pd(q[0]);
  const __m256d qy = _mm256_set1_pd(q[1]);
  const __m256d qz = _mm256_set1_pd(q[2]);
  const __m256d vr2 = _mm256_set1_pd(r2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d2 = Dist2(qx, qy, qz, xs + i, ys + i, zs + i);
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, vr2, _CMP_LE_OQ));
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(mask));
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - q[0];
    const double dy = ys[i] - q[1];
    const double dz = zs[i] - q[2];
    if (dx * dx + dy * dy + dz * dz <= r2) return i;
  }
  return n;
}

double MinDist2Avx2(const double q[3], const double* xs, const double* ys,
                    const double* zs, std::size_t n) {
  const __m256d qx = _mm256_set1_pd(q[0]);
  const __m256d qy = _mm256_set1_pd(q[1]);
  const __m256d qz = _mm256_set1_pd(q[2]);
  __m256d best4 = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    best4 = _mm256_min_pd(best4, Dist2(qx, qy, qz, xs + i, ys + i, zs + i));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best4);
  double best = lanes[0];
  for (int k = 1; k < 4; ++k) best = lanes[k] < best ? lanes[k] : best;
  for (; i < n; ++i) {
    const double dx = xs[i] - q[0];
    const double dy = ys[i] - q[1];
    const double dz = zs[i] - q[2];
    const double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 < best) best = d2;
  }
  return best;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", AxpyAvx2, FirstWithinAvx2,
                                 MinDist2Avx2};
  return table;
}

}  // namespace tactex::simd
