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


#include "dpts/baselines.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dpts/parallel.h"
#include "dpts/priority.h"

namespace dpts {

ElementCost FullElementCost(Sigma sigma, int64_t max_magnitude) {
  const double s = sigma.value();
  const int64_t reach = std::min<int64_t>(
      max_magnitude, static_cast<int64_t>(std::ceil(12.0 * s)) + 1);
  ElementCost c;
  double gain = 0.0;  // sum over bins of (phi(a) - phi(b))^2 / P
  for (int64_t q = -reach; q <= reach; ++q) {
    const double lo = q == -reach ? -kInf : static_cast<double>(q) - 0.5;
    const double hi = q == reach ? kInf : static_cast<double>(q) + 0.5;
    const double p = IntervalProb({lo, hi}, sigma);
    if (!(p > 1e-300)) continue;
    const double dphi = StdNormalPdf(lo / s) - StdNormalPdf(hi / s);
    gain += dphi * dphi / p;
    c.delta_r -= p * std::log2(p);
  }
  c.delta_d = -s * s * gain;
  if (c.delta_r > 0.0) c.priority = -c.delta_d / c.delta_r;
  return c;
}

namespace {

std::vector<ElementCost> AllElementCosts(const GaussianModel& model,
                                         int64_t max_magnitude) {
  model.Validate();
  std::vector<ElementCost> costs(model.size());
  ParallelFor(costs.size(), [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      costs[i] = FullElementCost(Sigma(model.sigma[i]), max_magnitude);
    }
  });
  return costs;
}

}  // namespace

std::vector<uint32_t> ChannelOrder(const GaussianModel& model,
                                   int64_t max_magnitude) {
  const std::vector<ElementCost> costs = AllElementCosts(model, max_magnitude);
  const size_t plane = model.shape.height * model.shape.width;
  std::vector<uint64_t> keys(model.shape.channels);
  for (size_t c = 0; c < keys.size(); ++c) {
    double r = 0.0;
    double d = 0.0;
    for (size_t i = c * plane; i < (c + 1) * plane; ++i) {
      r += costs[i].delta_r;
      d += costs[i].delta_d;
    }
    keys[c] = r > 0.0 ? PriorityKey(-d / r) : 0;
  }
  std::vector<uint32_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](uint32_t a, uint32_t b) { return keys[a] > keys[b]; });
  return order;
}

std::vector<uint32_t> ChannelSortOrder(const GaussianModel& model,
                                       int64_t max_magnitude) {
  const size_t plane = model.shape.height * model.shape.width;
  std::vector<uint32_t> order;
  order.reserve(model.size());
  for (uint32_t c : ChannelOrder(model, max_magnitude)) {
    for (size_t i = 0; i < plane; ++i) {
      order.push_back(static_cast<uint32_t>(c * plane + i));
    }
  }
  return order;
}

std::vector<uint32_t> LatentSortOrder(const GaussianModel& model,
                                      int64_t max_magnitude) {
  const std::vector<ElementCost> costs = AllElementCosts(model, max_magnitude);
  std::vector<uint64_t> keys(costs.size());
  for (size_t i = 0; i < costs.size(); ++i) {
    keys[i] = PriorityKey(costs[i].priority);
  }
  std::vector<uint32_t> order(costs.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](uint32_t a, uint32_t b) { return keys[a] > keys[b]; });
  return order;
}

EncodeResult EncodeBitplane(const LatentTensor& y, const GaussianModel& model,
                            EncodeOptions options) {
  options.strategy = Strategy::kBitPlanePriority;
  return Encode(y, model, options);
}

EncodeResult EncodeChannelSorted(const LatentTensor& y,
                                 const GaussianModel& model,
                                 EncodeOptions options) {
  options.strategy = Strategy::kChannelSort;
  return Encode(y, model, options);
}

EncodeResult EncodeLatentSorted(const LatentTensor& y,
                                const GaussianModel& model,
                                EncodeOptions options) {
  options.strategy = Strategy::kLatentSort;
  return Encode(y, model, options);
}

}  // namespace dpts
