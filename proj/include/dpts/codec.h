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


// Progressive encoding of a latent tensor into a scalable stream, and
// reconstruction from any prefix of it.
//
// The encoder centers the latent on the model means, quantizes, and sends
// one digit per element per plane in the order chosen by the strategy. The
// decoder replays the same schedule: every ordering decision depends only on
// the model and on digits already decoded, so a truncated stream decodes to
// exactly the state the full decoder passes through at that point.

#ifndef DPTS_CODEC_H_
#define DPTS_CODEC_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dpts/common.h"
#include "dpts/gaussian_stats.h"
#include "dpts/strategy.h"
#include "dpts/tritplane.h"

namespace dpts {

// Records the order in which elements were visited: one list per plane for
// plane-major strategies, one list overall for element-major ones.
struct ScheduleLog {
  std::vector<std::vector<uint32_t>> orders;
};

struct EncodeOptions {
  Strategy strategy = Strategy::kTritPlanePriority;
  // 0 selects the smallest plane count covering the clip_percentile-th
  // percentile of |round(y - mu)|; larger magnitudes are clamped.
  int planes = 0;
  double clip_percentile = 100.0;
  // Bits-per-pixel denominator; 0 means (16 H) x (16 W).
  uint32_t pixel_count = 0;
  std::vector<uint8_t> sideinfo;
  ScheduleLog* log = nullptr;
};

struct EncodeResult {
  std::vector<uint8_t> stream;
  // Payload byte offsets at which each plane's first digit was coded
  // (nondecreasing). Element-major strategies report a single 0.
  std::vector<size_t> plane_offsets;
  // Sum of -log2 P(digit) under the unquantized model.
  double total_bits = 0.0;
  size_t payload_bytes = 0;
  uint64_t symbols = 0;
  int planes = 0;
  std::vector<int64_t> quantized;
};

struct DecodeOptions {
  // Stop after this many digits even if more are decodable.
  uint64_t max_symbols = std::numeric_limits<uint64_t>::max();
  ScheduleLog* log = nullptr;
};

struct DecodeResult {
  LatentTensor reconstruction;  // centered + mu
  std::vector<double> centered;  // MMSE estimates of y - mu
  std::vector<int> depth;        // digits received per element
  uint64_t trits_consumed = 0;
  // Mean depth over elements, e.g. L - 2.37.
  double planes_completed = 0.0;
};

struct RDRecord {
  Strategy strategy = Strategy::kTritPlanePriority;
  size_t bytes = 0;  // payload bytes decoded
  double bits_per_pixel = 0.0;
  double mse = 0.0;
  uint64_t trits = 0;
};

// Plane configuration for a strategy given centered values.
PlaneConfig ChoosePlanes(std::span<const double> centered, Strategy strategy,
                         int planes, double clip_percentile);

// Throws kShapeMismatch, kNonPositiveSigma, kDimensionOverflow,
// kInvalidArgument.
EncodeResult Encode(const LatentTensor& y, const GaussianModel& model,
                    const EncodeOptions& options = {});

// `stream` is any prefix holding the full header and side information.
// Throws kDigestMismatch (checked before any payload is read),
// kCorruptHeader, kBelowMinimumLength, kShapeMismatch.
DecodeResult Decode(std::span<const uint8_t> stream,
                    const GaussianModel& model,
                    const DecodeOptions& options = {});

// Decodes `points` evenly spaced payload prefixes (both endpoints included)
// and reports latent-domain MSE against y_ref. Requires points >= 2.
std::vector<RDRecord> RdSweep(std::span<const uint8_t> stream,
                              const GaussianModel& model,
                              const LatentTensor& y_ref, int points);

// RD records at explicit payload byte budgets (clamped to the payload).
std::vector<RDRecord> RdAtBudgets(std::span<const uint8_t> stream,
                                  const GaussianModel& model,
                                  const LatentTensor& y_ref,
                                  std::span<const size_t> payload_budgets);

double MeanSquaredError(std::span<const double> a, std::span<const double> b);

}  // namespace dpts

#endif  // DPTS_CODEC_H_
