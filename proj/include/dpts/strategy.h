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


#ifndef DPTS_STRATEGY_H_
#define DPTS_STRATEGY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dpts {

// Transmission orders. The numeric values are stored in stream headers.
enum class Strategy : uint8_t {
  // Trit-planes MST to LST, each plane sorted by decreasing RD priority.
  kTritPlanePriority = 0,
  // Trit-planes, raster order within each plane.
  kTritPlaneRaster = 1,
  // Trit-planes, increasing RD priority within each plane.
  kTritPlaneReverse = 2,
  // Bit-planes sorted by decreasing binary RD priority.
  kBitPlanePriority = 3,
  // Whole channels to full depth, channels by aggregate priority.
  kChannelSort = 4,
  // Whole elements to full depth, elements by full-element priority.
  kLatentSort = 5,
  // Whole elements to full depth in raster order.
  kRasterNoSort = 6,
};

inline constexpr int kStrategyCount = 7;

std::string_view StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view name);
std::optional<Strategy> StrategyFromId(uint8_t id);
std::vector<Strategy> AllStrategies();

// Digit radix used by a strategy (2 for bit-planes, else 3).
int StrategyRadix(Strategy s);
// True when digits are sent plane by plane across all elements.
bool IsPlaneMajor(Strategy s);

}  // namespace dpts

#endif  // DPTS_STRATEGY_H_
