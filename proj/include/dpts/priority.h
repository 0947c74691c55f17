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

// Expected rate and distortion of the next digit of an element, and the
// greedy ordering of one plane by distortion reduction per bit.
//
// Only information available to both sides enters here (sigma and the digits
// already received), so a decoder recomputes exactly the encoder's order.

#ifndef DPTS_PRIORITY_H_
#define DPTS_PRIORITY_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dpts/gaussian_stats.h"
#include "dpts/tritplane.h"

namespace dpts {

// A digit whose most likely outcome has probability at least this is treated
// as deterministic: it is coded after the sorted digits of its plane.
inline constexpr double kDeterministicThreshold = 1.0 - 1e-12;

// Priorities are compared as 64-bit fixed point with this many fractional
// bits, so that last-ulp differences between builds cannot reorder a plane.
inline constexpr int kPriorityFractionBits = 40;

struct ChildStats {
  int count = 0;  // radix
  std::array<TruncatedMoments, 3> child{};
  std::array<double, 3> prob{};  // conditional probabilities q_k
};

// Moments of each child of `node` and the conditional child probabilities.
// `parent_log_prob` is the log probability of `node` itself.
ChildStats ComputeChildStats(const PlaneConfig& cfg, NodeId node, Sigma sigma,
                             double parent_log_prob);

struct TritCost {
  double delta_r = 0.0;   // entropy of the next digit, bits
  double delta_d = 0.0;   // expected change of conditional variance (<= 0)
  double priority = 0.0;  // -delta_d / delta_r
  uint64_t key = 0;       // fixed-point priority used for sorting
  bool skip = false;      // deterministic digit
  uint32_t element = 0;   // raster index
};

// Cost of the next digit given the node's own moments (its conditional
// variance is the current distortion).
TritCost CostFromStats(const ChildStats& stats,
                       const TruncatedMoments& parent);

// Convenience form for a standalone state; throws kInvalidArgument when the
// state has no digits left.
TritCost ComputeTritCost(const TritState& state);

uint64_t PriorityKey(double priority);

// Elements of one plane in decreasing priority; ties by raster index.
// Deterministic (skip) digits are excluded.
std::vector<uint32_t> PlaneOrder(std::span<const TritCost> costs);
// Increasing priority, same tie-break and exclusion.
std::vector<uint32_t> ReversePlaneOrder(std::span<const TritCost> costs);

}  // namespace dpts

#endif  // DPTS_PRIORITY_H_
