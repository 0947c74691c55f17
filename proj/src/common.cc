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


#include <cmath>
#include <string>

#include "byte_io.h"
#include "dpts/common.h"

namespace dpts {

void GaussianModel::Validate() const {
  if (mean.size() != shape.size() || sigma.size() != shape.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "model planes do not match the model shape");
  }
  for (size_t i = 0; i < sigma.size(); ++i) {
    if (!(sigma[i] > 0.0f) || !std::isfinite(sigma[i])) {
      throw Error(ErrorCode::kNonPositiveSigma,
                  "sigma at element " + std::to_string(i) +
                      " is not positive and finite");
    }
    if (!std::isfinite(mean[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "mean at element " + std::to_string(i) + " is not finite");
    }
  }
}

uint64_t GaussianModel::Digest() const {
  uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ull;
  };
  uint8_t buf[4];
  for (size_t d : {shape.channels, shape.height, shape.width}) {
    StoreLE<uint32_t>(buf, static_cast<uint32_t>(d));
    for (uint8_t b : buf) mix(b);
  }
  for (const auto* plane : {&mean, &sigma}) {
    for (float f : *plane) {
      StoreLE<uint32_t>(buf, FloatBits(f));
      for (uint8_t b : buf) mix(b);
    }
  }
  return h;
}

}  // namespace dpts
