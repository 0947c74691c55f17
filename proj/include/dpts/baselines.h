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


// Ablation orders that share the codec pipeline: bit-plane coding and the
// element-major orders (whole channels or whole elements to full depth).

#ifndef DPTS_BASELINES_H_
#define DPTS_BASELINES_H_

#include <cstdint>
#include <vector>

#include "dpts/codec.h"
#include "dpts/common.h"
#include "dpts/gaussian_stats.h"

namespace dpts {

// Rate and distortion change of sending a whole element at once: the
// entropy of its unit-bin quantization and the resulting drop in
// conditional variance. Bins beyond max_magnitude merge into the end bins.
struct ElementCost {
  double delta_r = 0.0;
  double delta_d = 0.0;
  double priority = 0.0;
};

ElementCost FullElementCost(Sigma sigma, int64_t max_magnitude);

// Channel indices by decreasing sum(-delta_d) / sum(delta_r); ties by index.
std::vector<uint32_t> ChannelOrder(const GaussianModel& model,
                                   int64_t max_magnitude);
// Element visiting order for ChannelSort: channels as above, raster inside.
std::vector<uint32_t> ChannelSortOrder(const GaussianModel& model,
                                       int64_t max_magnitude);
// Elements by decreasing full-element priority; ties by raster index.
std::vector<uint32_t> LatentSortOrder(const GaussianModel& model,
                                      int64_t max_magnitude);

// Encode with the corresponding strategy; other options pass through.
EncodeResult EncodeBitplane(const LatentTensor& y, const GaussianModel& model,
                            EncodeOptions options = {});
EncodeResult EncodeChannelSorted(const LatentTensor& y,
                                 const GaussianModel& model,
                                 EncodeOptions options = {});
EncodeResult EncodeLatentSorted(const LatentTensor& y,
                                const GaussianModel& model,
                                EncodeOptions options = {});

}  // namespace dpts

#endif  // DPTS_BASELINES_H_
