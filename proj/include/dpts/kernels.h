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


// Elementwise arithmetic over whole latent tensors: centering, rounding,
// mean re-addition and squared-error accumulation. Each kernel has a scalar
// reference and an AVX2 variant; the variant is chosen once at runtime from
// CPU features. Rounding and addition are bit-exact across variants; the
// squared-error sum differs only in summation order.

#ifndef DPTS_KERNELS_H_
#define DPTS_KERNELS_H_

#include <span>

namespace dpts {

enum class KernelIsa { kScalar, kAvx2 };

struct KernelTable {
  KernelIsa isa;
  // out[i] = a[i] - b[i]
  void (*subtract)(std::span<const double> a, std::span<const float> b,
                   std::span<double> out);
  // out[i] = a[i] + b[i]
  void (*add)(std::span<const double> a, std::span<const float> b,
              std::span<double> out);
  // out[i] = clamp(round_half_away_from_zero(x[i]), lo, hi)
  void (*round_clamp)(std::span<const double> x, double lo, double hi,
                      std::span<double> out);
  // sum_i (a[i] - b[i])^2
  double (*squared_error)(std::span<const double> a,
                          std::span<const double> b);
};

const KernelTable& ScalarKernels();
// nullptr when the build or the CPU lacks AVX2.
const KernelTable* Avx2Kernels();
// The best table for this CPU. Setting DPTS_FORCE_SCALAR in the environment
// (or defining it at build time) pins the scalar table.
const KernelTable& Kernels();

}  // namespace dpts

#endif  // DPTS_KERNELS_H_
