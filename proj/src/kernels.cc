// Copyright 2026 The dpts Authors. All Rights Reserved.
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


#include "dpts/kernels.h"

#include <cmath>
#include <cstdlib>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define DPTS_HAVE_X86 1
#else
#define DPTS_HAVE_X86 0
#endif

namespace dpts {
namespace {

void SubtractScalar(std::span<const double> a, std::span<const float> b,
                    std::span<double> out) {
  for (size_t i = 0; i < out.size(); ++i) out[i] = a[i] - double{b[i]};
}

void AddScalar(std::span<const double> a, std::span<const float> b,
               std::span<double> out) {
  for (size_t i = 0; i < out.size(); ++i) out[i] = a[i] + double{b[i]};
}

void RoundClampScalar(std::span<const double> x, double lo, double hi,
                      std::span<double> out) {
  for (size_t i = 0; i < out.size(); ++i) {
    const double r = std::round(x[i]);
    out[i] = r < lo ? lo : (r > hi ? hi : r);
  }
}

double SquaredErrorScalar(std::span<const double> a,
                          std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

constexpr KernelTable kScalarTable = {KernelIsa::kScalar, SubtractScalar,
                                      AddScalar, RoundClampScalar,
                                      SquaredErrorScalar};

#if DPTS_HAVE_X86

__attribute__((target("avx2"))) void SubtractAvx2(std::span<const double> a,
                                                  std::span<const float> b,
                                                  std::span<double> out) {
  const size_t n = out.size();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(&a[i]);
    const __m256d vb = _mm256_cvtps_pd(_mm_loadu_ps(&b[i]));
    _mm256_storeu_pd(&out[i], _mm256_sub_pd(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] - double{b[i]};
}

__attribute__((target("avx2"))) void AddAvx2(std::span<const double> a,
                                             std::span<const float> b,
                                             std::span<double> out) {
  const size_t n = out.size();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(&a[i]);
    const __m256d vb = _mm256_cvtps_pd(_mm_loadu_ps(&b[i]));
    _mm256_storeu_pd(&out[i], _mm256_add_pd(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] + double{b[i]};
}

// Half away from zero: truncate, then step one unit away from zero when the
// discarded fraction is at least one half. x - trunc(x) is exact.
__attribute__((target("avx2"))) void RoundClampAvx2(std::span<const double> x,
                                                    double lo, double hi,
                                                    std::span<double> out) {
  const size_t n = out.size();
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(&x[i]);
    const __m256d t = _mm256_round_pd(v, _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
    const __m256d frac = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(v, t));
    const __m256d away = _mm256_or_pd(one, _mm256_and_pd(v, sign_mask));
    __m256d r = _mm256_blendv_pd(t, _mm256_add_pd(t, away),
                                 _mm256_cmp_pd(frac, half, _CMP_GE_OQ));
    r = _mm256_max_pd(_mm256_min_pd(r, vhi), vlo);
    _mm256_storeu_pd(&out[i], r);
  }
  for (; i < n; ++i) {
    const double r = std::round(x[i]);
    out[i] = r < lo ? lo : (r > hi ? hi : r);
  }
}

__attribute__((target("avx2"))) double SquaredErrorAvx2(
    std::span<const double> a, std::span<const double> b) {
  const size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

constexpr KernelTable kAvx2Table = {KernelIsa::kAvx2, SubtractAvx2, AddAvx2,
                                    RoundClampAvx2, SquaredErrorAvx2};

#endif  // DPTS_HAVE_X86

}  // namespace

const KernelTable& ScalarKernels() { return kScalarTable; }

const KernelTable* Avx2Kernels() {
#if DPTS_HAVE_X86
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& Kernels() {
  static const KernelTable* table = [] {
#ifdef DPTS_FORCE_SCALAR
    return &kScalarTable;
#else
    if (std::getenv("DPTS_FORCE_SCALAR") != nullptr) return &kScalarTable;
    const KernelTable* avx2 = Avx2Kernels();
    return avx2 != nullptr ? avx2 : &kScalarTable;
#endif
  }();
  return *table;
}

}  // namespace dpts
