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

// Plane-by-plane interval refinement of quantized latent elements.
//
// A configuration with radix r and L planes covers r^L consecutive integer
// levels. Each refinement step splits the current interval into r children of
// equal nominal width; after L steps one integer level remains. Radix 3 is the
// trit-plane representation; radix 2 is the bit-plane baseline.
//
// Nodes are addressed exactly: a node at depth n is the digit prefix of its
// level index, so interval boundaries are integer level offsets and never
// accumulate rounding error. The outermost boundaries of the level range are
// nominally finite, but probability computations treat them as -inf / +inf
// so that clamped outliers carry their true tail mass.

#ifndef DPTS_TRITPLANE_H_
#define DPTS_TRITPLANE_H_

#include <array>
#include <cstdint>
#include <vector>

#include "dpts/gaussian_stats.h"

namespace dpts {

class PlaneConfig {
 public:
  static constexpr int kMaxTritPlanes = 40;
  static constexpr int kMaxBitPlanes = 63;

  // Throws kInvalidArgument when planes is out of range.
  static PlaneConfig Ternary(int planes);
  static PlaneConfig Binary(int planes);

  int radix() const { return radix_; }
  int planes() const { return planes_; }
  // radix^planes
  uint64_t levels() const { return levels_; }
  // Level index of the integer 0.
  uint64_t zero_index() const { return zero_index_; }
  int64_t min_value() const { return -static_cast<int64_t>(zero_index_); }
  int64_t max_value() const {
    return static_cast<int64_t>(levels_ - 1 - zero_index_);
  }
  // (3^L - 1) / 2 for trit planes.
  int64_t max_magnitude() const { return max_value(); }
  // radix^(planes - depth): number of levels under a node at `depth`.
  uint64_t span(int depth) const { return spans_[depth]; }

  bool operator==(const PlaneConfig& o) const {
    return radix_ == o.radix_ && planes_ == o.planes_;
  }

 private:
  PlaneConfig(int radix, int planes);

  int radix_;
  int planes_;
  uint64_t levels_;
  uint64_t zero_index_;
  std::array<uint64_t, kMaxBitPlanes + 1> spans_{};
};

// A node of the refinement tree: the first `depth` digits of a level index.
struct NodeId {
  uint64_t prefix = 0;
  int depth = 0;
};

// Nominal (finite) interval of a node, e.g. [-13.5, 13.5) for the L=3 root.
Interval NominalInterval(const PlaneConfig& cfg, NodeId node);
// Interval used for statistics: outermost boundaries mapped to -inf / +inf.
Interval ProbabilityInterval(const PlaneConfig& cfg, NodeId node);
NodeId ChildNode(const PlaneConfig& cfg, NodeId node, int digit);

Interval InitialInterval(const PlaneConfig& cfg);
// Splits a nominal interval into three equal thirds.
std::array<Interval, 3> Partition(Interval iv);

// Round half away from zero, then clamp to the configuration's level range.
int64_t Quantize(double y, const PlaneConfig& cfg);
// Smallest trit-plane count whose range covers max_abs (at least 1).
int TritPlanesFor(int64_t max_abs);
// Smallest bit-plane count whose range [-2^(L-1), 2^(L-1)-1] covers max_abs.
int BitPlanesFor(int64_t max_abs);

// Level index of a value and its digits, most significant first.
uint64_t LevelIndex(int64_t q, const PlaneConfig& cfg);
int DigitAt(uint64_t level_index, int depth, const PlaneConfig& cfg);
std::vector<int> EncodeTrits(int64_t q, const PlaneConfig& cfg);

// Decoding state of one element: the node reached so far and the element's
// sigma. Depth equals the number of digits received.
class TritState {
 public:
  TritState(const PlaneConfig& cfg, Sigma sigma);

  const PlaneConfig& config() const { return cfg_; }
  Sigma sigma() const { return sigma_; }
  int depth() const { return node_.depth; }
  NodeId node() const { return node_; }
  Interval interval() const { return NominalInterval(cfg_, node_); }
  Interval probability_interval() const {
    return ProbabilityInterval(cfg_, node_);
  }
  std::vector<int> trits() const;

  // Throws kInvalidTrit for digits outside [0, radix) and kInvalidArgument
  // once all planes are received.
  TritState Refine(int digit) const;

 private:
  PlaneConfig cfg_;
  Sigma sigma_;
  NodeId node_;
};

// MMSE reconstruction E[y | y in interval]; 0 at depth 0.
double Reconstruct(const TritState& state);

}  // namespace dpts

#endif  // DPTS_TRITPLANE_H_
