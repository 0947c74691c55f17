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


#include "dpts/strategy.h"

#include <array>

namespace dpts {
namespace {

constexpr std::array<std::string_view, kStrategyCount> kNames = {
    "trit-priority", "trit-raster",  "trit-reverse", "bit-priority",
    "channel-sort",  "latent-sort",  "raster",
};

}  // namespace

std::string_view StrategyName(Strategy s) {
  return kNames[static_cast<size_t>(s)];
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Strategy>(i);
  }
  return std::nullopt;
}

std::optional<Strategy> StrategyFromId(uint8_t id) {
  if (id >= kStrategyCount) return std::nullopt;
  return static_cast<Strategy>(id);
}

std::vector<Strategy> AllStrategies() {
  std::vector<Strategy> all;
  for (int i = 0; i < kStrategyCount; ++i) {
    all.push_back(static_cast<Strategy>(i));
  }
  return all;
}

int StrategyRadix(Strategy s) {
  return s == Strategy::kBitPlanePriority ? 2 : 3;
}

bool IsPlaneMajor(Strategy s) {
  switch (s) {
    case Strategy::kTritPlanePriority:
    case Strategy::kTritPlaneRaster:
    case Strategy::kTritPlaneReverse:
    case Strategy::kBitPlanePriority:
      return true;
    default:
      return false;
  }
}

}  // namespace dpts
