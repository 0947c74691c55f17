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

#include "dpts/priority.h"

#include <algorithm>
#include <cmath>

#include "dpts/common.h"

namespace dpts {

ChildStats ComputeChildStats(const PlaneConfig& cfg, NodeId node, Sigma sigma,
                             double parent_log_prob) {
  ChildStats s;
  s.count = cfg.radix();
  for (int k = 0; k < s.count; ++k) {
    const Interval iv = ProbabilityInterval(cfg, ChildNode(cfg, node, k));
    s.child[k] = ComputeTruncatedMoments(iv, sigma);
    s.prob[k] = std::exp(s.child[k].log_prob - parent_log_prob);
  }
  return s;
}

uint64_t PriorityKey(double priority) {
  if (!(priority > 0.0)) return 0;
  const double scaled = std::ldexp(priority, kPriorityFractionBits);
  if (scaled >= 18446744073709551615.0) return UINT64_MAX;
  return static_cast<uint64_t>(scaled);
}

TritCost CostFromStats(const ChildStats& stats,
                       const TruncatedMoments& parent) {
  TritCost c;
  double max_q = 0.0;
  double expected_var = 0.0;
  for (int k = 0; k < stats.count; ++k) {
    const double q = stats.prob[k];
    max_q = std::max(max_q, q);
    if (q > 0.0 && q < 1.0) c.delta_r -= q * std::log2(q);
    expected_var += q * stats.child[k].variance;
  }
  c.delta_d = expected_var - parent.variance;
  c.skip = max_q >= kDeterministicThreshold;
  if (c.delta_r > 0.0) c.priority = std::max(0.0, -c.delta_d) / c.delta_r;
  c.key = PriorityKey(c.priority);
  return c;
}

TritCost ComputeTritCost(const TritState& state) {
  if (state.depth() >= state.config().planes()) {
    throw Error(ErrorCode::kInvalidArgument, "state has no digits left");
  }
  const TruncatedMoments parent =
      ComputeTruncatedMoments(state.probability_interval(), state.sigma());
  const ChildStats stats = ComputeChildStats(state.config(), state.node(),
                                             state.sigma(), parent.log_prob);
  return CostFromStats(stats, parent);
}

namespace {

template <typename Less>
std::vector<uint32_t> SortedNonSkip(std::span<const TritCost> costs,
                                    Less less) {
  std::vector<const TritCost*> live;
  live.reserve(costs.size());
  for (const TritCost& c : costs) {
    if (!c.skip) live.push_back(&c);
  }
  std::sort(live.begin(), live.end(),
            [&](const TritCost* a, const TritCost* b) {
              if (a->key != b->key) return less(a->key, b->key);
              return a->element < b->element;
            });
  std::vector<uint32_t> order(live.size());
  for (size_t i = 0; i < live.size(); ++i) order[i] = live[i]->element;
  return order;
}

}  // namespace

std::vector<uint32_t> PlaneOrder(std::span<const TritCost> costs) {
  return SortedNonSkip(costs, [](uint64_t a, uint64_t b) { return a > b; });
}

std::vector<uint32_t> ReversePlaneOrder(std::span<const TritCost> costs) {
  return SortedNonSkip(costs, [](uint64_t a, uint64_t b) { return a < b; });
}

}  // namespace dpts
