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


// Synthetic latents and RD evaluation across strategies.

#ifndef DPTS_HARNESS_H_
#define DPTS_HARNESS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dpts/codec.h"
#include "dpts/common.h"
#include "dpts/strategy.h"

namespace dpts {

enum class SigmaLaw {
  kConstant,     // sigma everywhere
  kLogUniform,   // log sigma uniform on [log sigma_min, log sigma_max]
  kChannelDecay  // max(sigma_min, sigma_max * decay^c) for channel c
};

struct SyntheticSpec {
  Shape shape{192, 8, 8};
  SigmaLaw law = SigmaLaw::kLogUniform;
  double sigma = 1.0;
  double sigma_min = 0.05;
  double sigma_max = 8.0;
  double decay = 0.97;
  // Means are mean_scale * N(0, 1); the centered latent is unaffected.
  double mean_scale = 0.0;
  uint64_t seed = 0;
};

// Fields missing from the JSON object keep their defaults. Throws
// kInvalidArgument on unknown laws or bad values.
SyntheticSpec SyntheticSpecFromJson(const std::string& json_text);
std::string SyntheticSpecToJson(const SyntheticSpec& spec);

struct SyntheticSample {
  LatentTensor latent;
  GaussianModel model;
};

// y = mu + sigma * z with z ~ N(0, 1) from a seeded mt19937_64; sigma is
// drawn first and rounded to float, so y - mu ~ N(0, sigma^2) for the
// stored sigma. Bitwise reproducible for a given spec.
SyntheticSample Generate(const SyntheticSpec& spec);

struct EvaluationRow {
  uint64_t seed = 0;
  RDRecord record;
};

// RdSweep with `points` prefixes for every (tensor, strategy) pair, ordered
// by (seed, strategy, bytes).
std::vector<EvaluationRow> Evaluate(const std::vector<Strategy>& strategies,
                                    const std::vector<SyntheticSpec>& tensors,
                                    int points);

// strategy,bytes,bpp,mse,seed
std::string ToCsv(const std::vector<EvaluationRow>& rows);

// Mean MSE per strategy at payload budgets that are the given fractions of
// the TritPlanePriority payload of each tensor, so every strategy is
// measured at the same byte counts. Averaged over tensors and fractions.
std::map<Strategy, double> MeanMseAtMatchedRates(
    const std::vector<Strategy>& strategies,
    const std::vector<SyntheticSpec>& tensors,
    const std::vector<double>& fractions);

// (i - 0.5) / count for i = 1..count.
std::vector<double> MidpointFractions(int count);

}  // namespace dpts

#endif  // DPTS_HARNESS_H_
