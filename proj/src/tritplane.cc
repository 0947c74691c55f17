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

#include "dpts/tritplane.h"

#include <cmath>
#include <string>

#include "dpts/common.h"

namespace dpts {
namespace {

double LevelBoundary(const PlaneConfig& cfg, uint64_t index) {
  const __int128 offset = static_cast<__int128>(index) -
                          static_cast<__int128>(cfg.zero_index());
  return static_cast<double>(offset) - 0.5;
}

}  // namespace

PlaneConfig::PlaneConfig(int radix, int planes)
    : radix_(radix), planes_(planes) {
  const int max_planes = radix == 3 ? kMaxTritPlanes : kMaxBitPlanes;
  if (planes < 1 || planes > max_planes) {
    throw Error(ErrorCode::kInvalidArgument,
                "plane count " + std::to_string(planes) +
                    " outside [1, " + std::to_string(max_planes) + "]");
  }
  spans_[planes] = 1;
  for (int d = planes - 1; d >= 0; --d) {
    spans_[d] = spans_[d + 1] * static_cast<uint64_t>(radix);
  }
  levels_ = spans_[0];
  zero_index_ = radix == 3 ? (levels_ - 1) / 2 : levels_ / 2;
}

PlaneConfig PlaneConfig::Ternary(int planes) { return PlaneConfig(3, planes); }
PlaneConfig PlaneConfig::Binary(int planes) { return PlaneConfig(2, planes); }

Interval NominalInterval(const PlaneConfig& cfg, NodeId node) {
  const uint64_t width = cfg.span(node.depth);
  const uint64_t lo = node.prefix * width;
  return {LevelBoundary(cfg, lo), LevelBoundary(cfg, lo + width)};
}

Interval ProbabilityInterval(const PlaneConfig& cfg, NodeId node) {
  const uint64_t width = cfg.span(node.depth);
  const uint64_t lo = node.prefix * width;
  const uint64_t hi = lo + width;
  return {lo == 0 ? -kInf : LevelBoundary(cfg, lo),
          hi == cfg.levels() ? kInf : LevelBoundary(cfg, hi)};
}

NodeId ChildNode(const PlaneConfig& cfg, NodeId node, int digit) {
  return {node.prefix * static_cast<uint64_t>(cfg.radix()) +
              static_cast<uint64_t>(digit),
          node.depth + 1};
}

Interval InitialInterval(const PlaneConfig& cfg) {
  return NominalInterval(cfg, NodeId{});
}

std::array<Interval, 3> Partition(Interval iv) {
  const double a = (2.0 * iv.lo + iv.hi) / 3.0;
  const double b = (iv.lo + 2.0 * iv.hi) / 3.0;
  return {Interval{iv.lo, a}, Interval{a, b}, Interval{b, iv.hi}};
}

int64_t Quantize(double y, const PlaneConfig& cfg) {
  const double r = std::round(y);
  if (r >= static_cast<double>(cfg.max_value())) return cfg.max_value();
  if (r <= static_cast<double>(cfg.min_value())) return cfg.min_value();
  return static_cast<int64_t>(r);
}

int TritPlanesFor(int64_t max_abs) {
  int planes = 1;
  uint64_t magnitude = 1;  // (3^planes - 1) / 2
  while (static_cast<int64_t>(magnitude) < max_abs &&
         planes < PlaneConfig::kMaxTritPlanes) {
    magnitude = 3 * magnitude + 1;
    ++planes;
  }
  return planes;
}

int BitPlanesFor(int64_t max_abs) {
  int planes = 1;
  uint64_t magnitude = 0;  // 2^(planes - 1) - 1
  while (static_cast<int64_t>(magnitude) < max_abs &&
         planes < PlaneConfig::kMaxBitPlanes) {
    magnitude = 2 * magnitude + 1;
    ++planes;
  }
  return planes;
}

uint64_t LevelIndex(int64_t q, const PlaneConfig& cfg) {
  if (q < cfg.min_value() || q > cfg.max_value()) {
    throw Error(ErrorCode::kInvalidArgument,
                "value " + std::to_string(q) + " outside the level range");
  }
  return static_cast<uint64_t>(static_cast<__int128>(q) + cfg.zero_index());
}

int DigitAt(uint64_t level_index, int depth, const PlaneConfig& cfg) {
  return static_cast<int>((level_index / cfg.span(depth + 1)) %
                          static_cast<uint64_t>(cfg.radix()));
}

std::vector<int> EncodeTrits(int64_t q, const PlaneConfig& cfg) {
  const uint64_t index = LevelIndex(q, cfg);
  std::vector<int> digits(cfg.planes());
  for (int d = 0; d < cfg.planes(); ++d) digits[d] = DigitAt(index, d, cfg);
  return digits;
}

TritState::TritState(const PlaneConfig& cfg, Sigma sigma)
    : cfg_(cfg), sigma_(sigma) {}

std::vector<int> TritState::trits() const {
  std::vector<int> out(node_.depth);
  uint64_t p = node_.prefix;
  for (int d = node_.depth - 1; d >= 0; --d) {
    out[d] = static_cast<int>(p % static_cast<uint64_t>(cfg_.radix()));
    p /= static_cast<uint64_t>(cfg_.radix());
  }
  return out;
}

TritState TritState::Refine(int digit) const {
  if (digit < 0 || digit >= cfg_.radix()) {
    throw Error(ErrorCode::kInvalidTrit,
                "digit " + std::to_string(digit) + " outside [0, " +
                    std::to_string(cfg_.radix()) + ")");
  }
  if (node_.depth >= cfg_.planes()) {
    throw Error(ErrorCode::kInvalidArgument, "all planes already received");
  }
  TritState next = *this;
  next.node_ = ChildNode(cfg_, node_, digit);
  return next;
}

double Reconstruct(const TritState& state) {
  if (state.depth() == 0) return 0.0;
  return TruncatedMean(state.probability_interval(), state.sigma());
}

}  // namespace dpts
