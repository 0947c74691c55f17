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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

#include "dpts/parallel.h"

namespace dpts {
namespace {

bool SameBits(double a, double b) { return std::memcmp(&a, &b, 8) == 0; }

std::vector<double> Probe(size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 20.0);
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  // Rounding edge cases.
  const double edges[] = {0.5,  -0.5, 1.5,  -1.5, 2.5,  -2.5, 0.0,
                          -0.0, 0.49999999999999994, -0.49999999999999994,
                          1e300, -1e300, 4503599627370495.5, 13.5, -13.5};
  for (size_t i = 0; i < std::size(edges) && i < n; ++i) v[i] = edges[i];
  return v;
}

TEST(KernelsTest, ScalarReference) {
  const KernelTable& k = ScalarKernels();
  EXPECT_EQ(k.isa, KernelIsa::kScalar);
  const std::vector<double> x = {0.5, -0.5, 2.5, -2.5, 100.0, -0.2};
  std::vector<double> out(x.size());
  k.round_clamp(x, -13.0, 13.0, out);
  EXPECT_EQ(out, (std::vector<double>{1.0, -1.0, 3.0, -3.0, 13.0, -0.0}));
  EXPECT_TRUE(std::signbit(out[5]));
  const std::vector<float> m = {1.0f, 2.0f};
  std::vector<double> s(2);
  k.subtract(std::vector<double>{3.0, 3.0}, m, s);
  EXPECT_EQ(s, (std::vector<double>{2.0, 1.0}));
  k.add(s, m, s);
  EXPECT_EQ(s, (std::vector<double>{3.0, 3.0}));
  EXPECT_EQ(k.squared_error(std::vector<double>{1.0, 2.0},
                            std::vector<double>{0.0, 4.0}),
            5.0);
}

TEST(KernelsTest, Avx2MatchesScalar) {
  const KernelTable* avx2 = Avx2Kernels();
  if (avx2 == nullptr) GTEST_SKIP() << "no AVX2 on this machine";
  const KernelTable& ref = ScalarKernels();
  for (size_t n : {0, 1, 3, 4, 5, 15, 16, 17, 1000, 1003}) {
    const std::vector<double> a = Probe(n, n + 1);
    std::vector<float> b(n);
    for (size_t i = 0; i < n; ++i) {
      b[i] = static_cast<float>(std::clamp(a[(i * 7) % n] / 3, -1e30, 1e30));
    }
    std::vector<double> o1(n), o2(n);

    ref.subtract(a, b, o1);
    avx2->subtract(a, b, o2);
    for (size_t i = 0; i < n; ++i) ASSERT_TRUE(SameBits(o1[i], o2[i]));

    ref.add(a, b, o1);
    avx2->add(a, b, o2);
    for (size_t i = 0; i < n; ++i) ASSERT_TRUE(SameBits(o1[i], o2[i]));

    ref.round_clamp(a, -1e6, 1e6, o1);
    avx2->round_clamp(a, -1e6, 1e6, o2);
    for (size_t i = 0; i < n; ++i) {
      ASSERT_TRUE(SameBits(o1[i], o2[i])) << a[i] << " " << o1[i] << " "
                                          << o2[i];
      ASSERT_TRUE(SameBits(o1[i], std::clamp(std::round(a[i]), -1e6, 1e6)));
    }

    std::vector<double> c(n);
    for (size_t i = 0; i < n; ++i) c[i] = std::sin(static_cast<double>(i));
    ref.add(c, b, o1);
    const double e1 = ref.squared_error(c, o1);
    const double e2 = avx2->squared_error(c, o1);
    EXPECT_NEAR(e1, e2, 1e-12 * std::max(1.0, e1));
  }
}

TEST(KernelsTest, DispatchReturnsATable) {
  const KernelTable& k = Kernels();
  EXPECT_TRUE(k.isa == KernelIsa::kScalar || k.isa == KernelIsa::kAvx2);
}

TEST(ParallelTest, CoversRangeOnce) {
  for (size_t n : {0, 1, 2047, 2048, 100000}) {
    std::vector<std::atomic<int>> hits(n);
    ParallelFor(n, [&](size_t b, size_t e) {
      for (size_t i = b; i < e; ++i) hits[i]++;
    });
    for (size_t i = 0; i < n; ++i) ASSERT_EQ(hits[i].load(), 1);
  }
  EXPECT_GE(WorkerCount(), 1);
}

TEST(ParallelTest, PropagatesExceptions) {
  EXPECT_THROW(ParallelFor(100000,
                           [](size_t b, size_t) {
                             if (b == 0) throw std::runtime_error("x");
                           }),
               std::runtime_error);
}

}  // namespace
}  // namespace dpts
