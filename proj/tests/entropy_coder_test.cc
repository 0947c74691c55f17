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


#include "dpts/entropy_coder.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dpts/common.h"

namespace dpts {
namespace {

struct Coded {
  std::vector<int> symbols;
  std::vector<SymbolModel> models;
  std::vector<uint8_t> bytes;
  double cost_bits = 0.0;
};

SymbolModel RandomModel(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = rng() % 4 == 0 ? 2 : 3;
  std::vector<double> p(n);
  for (double& v : p) v = std::pow(u(rng), 6.0);  // often very skewed
  return SymbolModel::FromProbabilities(p);
}

Coded EncodeRandom(uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  Coded c;
  RangeEncoder enc;
  for (int i = 0; i < count; ++i) {
    const SymbolModel m = RandomModel(rng);
    // Draw from the model itself so skewed models mostly see likely symbols.
    uint32_t v = static_cast<uint32_t>(rng() % kTotalFrequency);
    int s = 0;
    while (v >= m.freq[s]) v -= m.freq[s++];
    enc.Encode(s, m);
    c.cost_bits += m.CostBits(s);
    c.symbols.push_back(s);
    c.models.push_back(m);
  }
  c.bytes = enc.Finish();
  return c;
}

TEST(SymbolModelTest, FrequenciesSumAndFloor) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10000; ++i) {
    const SymbolModel m = RandomModel(rng);
    EXPECT_EQ(m.freq[0] + m.freq[1] + m.freq[2], kTotalFrequency);
    EXPECT_GE(m.freq[0], 1u);
    EXPECT_GE(m.freq[1], 1u);
  }
  const double certain[3] = {0.0, 1.0, 0.0};
  const SymbolModel m = SymbolModel::FromProbabilities(certain);
  EXPECT_EQ(m.freq[0], 1u);
  EXPECT_EQ(m.freq[1], kTotalFrequency - 2);
  EXPECT_EQ(m.freq[2], 1u);
  const double two[2] = {0.25, 0.75};
  const SymbolModel b = SymbolModel::FromProbabilities(two);
  EXPECT_EQ(b.freq[2], 0u);
  EXPECT_EQ(b.freq[0] + b.freq[1], kTotalFrequency);
}

TEST(SymbolModelTest, RemainderTiesGoToLowerSymbol) {
  const double p[3] = {1.0, 1.0, 1.0};
  const SymbolModel m = SymbolModel::FromProbabilities(p);
  // 65533 / 3 = 21844 rem 1: the extra count goes to symbol 0.
  EXPECT_EQ(m.freq[0], 21846u);
  EXPECT_EQ(m.freq[1], 21845u);
  EXPECT_EQ(m.freq[2], 21845u);
}

TEST(SymbolModelTest, Validation) {
  EXPECT_THROW(SymbolModel::FromFrequencies({1, 2, 3}), Error);
  const double one[1] = {1.0};
  EXPECT_THROW(SymbolModel::FromProbabilities(one), Error);
  RangeEncoder enc;
  const SymbolModel m = SymbolModel::FromFrequencies({0, kTotalFrequency, 0});
  try {
    enc.Encode(0, m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroFrequencySymbol);
  }
}

TEST(RangeCoderTest, EmptyStream) {
  RangeEncoder enc;
  EXPECT_TRUE(enc.Finish().empty());
  RangeDecoder dec({});
  const double p[3] = {0.2, 0.5, 0.3};
  EXPECT_FALSE(dec.Decode(SymbolModel::FromProbabilities(p)).has_value());
}

TEST(RangeCoderTest, RoundTrip) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Coded c = EncodeRandom(seed, 20000);
    RangeDecoder dec(c.bytes);
    for (size_t i = 0; i < c.symbols.size(); ++i) {
      const auto s = dec.Decode(c.models[i]);
      ASSERT_TRUE(s.has_value()) << "seed " << seed << " symbol " << i;
      ASSERT_EQ(*s, c.symbols[i]);
    }
    // Length tracks the model cost: at most a few bytes of flush.
    EXPECT_LE(c.bytes.size() * 8.0, c.cost_bits + 64.0);
    EXPECT_GE(c.bytes.size() * 8.0, c.cost_bits - 1.0);
  }
}

TEST(RangeCoderTest, CarryPropagation) {
  // Always coding the top symbol of a skewed model keeps low near the top
  // of the window and forces long carry chains.
  RangeEncoder enc;
  const SymbolModel m = SymbolModel::FromFrequencies({65000, 35, 501});
  std::vector<int> symbols;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50000; ++i) {
    const int s = rng() % 16 == 0 ? 0 : 2;
    symbols.push_back(s);
    enc.Encode(s, m);
  }
  const std::vector<uint8_t> bytes = enc.Finish();
  RangeDecoder dec(bytes);
  for (int s : symbols) ASSERT_EQ(dec.Decode(m), s);
}

TEST(RangeCoderTest, EveryPrefixDecodesASymbolPrefix) {
  const Coded c = EncodeRandom(77, 3000);
  size_t previous = 0;
  for (size_t n = 0; n <= c.bytes.size(); ++n) {
    RangeDecoder dec(std::span<const uint8_t>(c.bytes.data(), n));
    size_t count = 0;
    while (count < c.symbols.size()) {
      const auto s = dec.Decode(c.models[count]);
      if (!s) break;
      ASSERT_EQ(*s, c.symbols[count]) << "prefix " << n;
      ++count;
    }
    EXPECT_TRUE(count == c.symbols.size() || dec.exhausted());
    EXPECT_GE(count, previous);
    previous = count;
  }
  EXPECT_EQ(previous, c.symbols.size());
}

TEST(PrefixSetDecoderTest, MatchesIndependentDecoders) {
  const Coded c = EncodeRandom(5, 4000);
  std::vector<size_t> limits;
  for (size_t n = 0; n <= c.bytes.size() + 3; n += 7) limits.push_back(n);
  limits.push_back(c.bytes.size());

  std::vector<size_t> expected(limits.size());
  for (size_t i = 0; i < limits.size(); ++i) {
    RangeDecoder dec(std::span<const uint8_t>(
        c.bytes.data(), std::min(limits[i], c.bytes.size())));
    size_t count = 0;
    while (count < c.symbols.size() && dec.Decode(c.models[count])) ++count;
    expected[i] = count;
  }

  std::vector<size_t> got(limits.size(), c.symbols.size());
  PrefixSetDecoder dec(c.bytes, limits);
  for (size_t k = 0; k < c.symbols.size(); ++k) {
    const auto s = dec.Decode(c.models[k]);
    for (size_t i : dec.newly_stopped()) got[i] = k;
    ASSERT_EQ(s, c.symbols[k]);
  }
  EXPECT_EQ(got, expected);
}

}  // namespace
}  // namespace dpts
