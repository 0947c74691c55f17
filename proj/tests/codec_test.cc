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


#include "dpts/codec.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dpts/common.h"
#include "dpts/container.h"
#include "dpts/harness.h"
#include "dpts/priority.h"

namespace dpts {
namespace {

SyntheticSample Sample(Shape shape, uint64_t seed, double mean_scale = 0.5) {
  SyntheticSpec spec;
  spec.shape = shape;
  spec.seed = seed;
  spec.mean_scale = mean_scale;
  return Generate(spec);
}

// -log2 P(q) with unit bins, the outermost bins unbounded.
double IdealBits(const std::vector<int64_t>& q, const GaussianModel& m,
                 const PlaneConfig& cfg) {
  double bits = 0.0;
  for (size_t i = 0; i < q.size(); ++i) {
    const double lo = q[i] == cfg.min_value() ? -kInf : q[i] - 0.5;
    const double hi = q[i] == cfg.max_value() ? kInf : q[i] + 0.5;
    bits -= std::log2(IntervalProb({lo, hi}, Sigma(m.sigma[i])));
  }
  return bits;
}

int64_t RoundClamp(double v, const PlaneConfig& cfg) {
  return Quantize(v, cfg);
}

TEST(CodecTest, InputValidation) {
  SyntheticSample s = Sample({2, 3, 4}, 1);
  LatentTensor wrong(Shape{2, 3, 5});
  try {
    Encode(wrong, s.model);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
  GaussianModel bad = s.model;
  bad.sigma[3] = -1.0f;
  try {
    Encode(s.latent, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPositiveSigma);
  }
  LatentTensor nan = s.latent;
  nan.values[0] = std::nan("");
  EXPECT_THROW(Encode(nan, s.model), Error);
  EncodeOptions opt;
  opt.clip_percentile = 0.0;
  EXPECT_THROW(Encode(s.latent, s.model, opt), Error);
}

TEST(CodecTest, AllZeroLatentSendsOnlyMiddleDigits) {
  GaussianModel m(Shape{1, 4, 5});
  for (size_t i = 0; i < m.size(); ++i) m.sigma[i] = 0.2f + 0.3f * i;
  LatentTensor y(m.shape);
  EncodeOptions opt;
  opt.planes = 3;
  const EncodeResult r = Encode(y, m, opt);
  const PlaneConfig cfg = PlaneConfig::Ternary(3);
  double oracle = 0.0;
  for (size_t i = 0; i < m.size(); ++i) {
    NodeId node;
    double parent = 1.0;
    for (int d = 0; d < 3; ++d) {
      node = ChildNode(cfg, node, 1);
      const double p = IntervalProb(ProbabilityInterval(cfg, node),
                                    Sigma(m.sigma[i]));
      oracle -= std::log2(p / parent);
      parent = p;
    }
  }
  EXPECT_NEAR(r.total_bits, oracle, 1e-9 * oracle);
  EXPECT_GE(r.payload_bytes * 8.0, r.total_bits);
  EXPECT_LE(r.payload_bytes, 1.005 * r.total_bits / 8 + 8);

  const DecodeResult d = Decode(r.stream, m);
  for (size_t i = 0; i < m.size(); ++i) {
    EXPECT_EQ(d.centered[i], 0.0);
    EXPECT_EQ(d.depth[i], 3);
  }
}

TEST(CodecTest, SingleElementDigits) {
  GaussianModel m(Shape{1, 1, 1});
  LatentTensor y(m.shape);
  y.values[0] = 2.0;
  EncodeOptions opt;
  opt.planes = 3;
  ScheduleLog log;
  opt.log = &log;
  const EncodeResult r = Encode(y, m, opt);
  EXPECT_EQ(r.quantized[0], 2);
  EXPECT_EQ(r.symbols, 3u);
  EXPECT_EQ(log.orders.size(), 3u);

  const PlaneConfig cfg = PlaneConfig::Ternary(3);
  const int digits[3] = {1, 2, 0};
  TritState s(cfg, Sigma(1.0));
  for (int n = 0; n <= 3; ++n) {
    DecodeOptions dopt;
    dopt.max_symbols = n;
    const DecodeResult d = Decode(r.stream, m, dopt);
    EXPECT_EQ(d.depth[0], n);
    EXPECT_EQ(d.centered[0], Reconstruct(s)) << n;
    if (n < 3) s = s.Refine(digits[n]);
  }
  EXPECT_EQ(s.interval(), (Interval{1.5, 2.5}));
}

TEST(CodecTest, RateTracksIdealEntropy) {
  GaussianModel m(Shape{4, 50, 50});
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  LatentTensor y(m.shape);
  for (size_t i = 0; i < m.size(); ++i) {
    m.sigma[i] = static_cast<float>(0.5 + (i % 7));
    y.values[i] = m.sigma[i] * g(rng);
  }
  const EncodeResult r = Encode(y, m);
  const PlaneConfig cfg = PlaneConfig::Ternary(r.planes);
  const double ideal = IdealBits(r.quantized, m, cfg);
  EXPECT_NEAR(r.total_bits, ideal, 1e-9 * ideal);
  EXPECT_NEAR(r.payload_bytes * 8.0, ideal, 0.01 * ideal);
}

class StrategyTest : public ::testing::TestWithParam<Strategy> {};

TEST_P(StrategyTest, LosslessAtFullRate) {
  for (uint64_t seed = 0; seed < 4; ++seed) {
    const SyntheticSample s = Sample({6, 5, 7}, seed);
    EncodeOptions opt;
    opt.strategy = GetParam();
    ScheduleLog enc_log;
    opt.log = &enc_log;
    const EncodeResult r = Encode(s.latent, s.model, opt);
    EXPECT_EQ(StreamHeader::Parse(r.stream).strategy,
              static_cast<uint8_t>(GetParam()));
    DecodeOptions dopt;
    ScheduleLog dec_log;
    dopt.log = &dec_log;
    const DecodeResult d = Decode(r.stream, s.model, dopt);
    EXPECT_EQ(enc_log.orders, dec_log.orders);
    const PlaneConfig cfg = ChoosePlanes({}, GetParam(), r.planes, 100.0);
    for (size_t i = 0; i < s.model.size(); ++i) {
      ASSERT_EQ(RoundClamp(d.centered[i], cfg), r.quantized[i]);
      ASSERT_EQ(d.depth[i], r.planes);
    }
    EXPECT_EQ(d.trits_consumed, r.symbols);
    EXPECT_EQ(d.planes_completed, r.planes);
  }
}

TEST_P(StrategyTest, PrefixEqualsIntermediateState) {
  const SyntheticSample s = Sample({5, 6, 6}, 42);
  EncodeOptions opt;
  opt.strategy = GetParam();
  const EncodeResult r = Encode(s.latent, s.model, opt);
  const size_t header = r.stream.size() - r.payload_bytes;
  std::mt19937_64 rng(1);
  uint64_t previous = 0;
  for (size_t b = header; b <= r.stream.size();
       b += 1 + rng() % std::max<size_t>(1, r.payload_bytes / 12)) {
    const std::vector<uint8_t> cut = TruncateStream(r.stream, b);
    const DecodeResult p = Decode(cut, s.model);
    DecodeOptions dopt;
    dopt.max_symbols = p.trits_consumed;
    const DecodeResult f = Decode(r.stream, s.model, dopt);
    EXPECT_EQ(p.centered, f.centered);
    EXPECT_EQ(p.depth, f.depth);
    EXPECT_GE(p.trits_consumed, previous);
    previous = p.trits_consumed;
  }
}

TEST_P(StrategyTest, ZeroPayloadIsTheMean) {
  const SyntheticSample s = Sample({3, 4, 4}, 7, 2.0);
  EncodeOptions opt;
  opt.strategy = GetParam();
  opt.sideinfo = {1, 2, 3, 4};
  const EncodeResult r = Encode(s.latent, s.model, opt);
  const DecodeResult d =
      Decode(TruncateStream(r.stream, kHeaderSize + 4), s.model);
  EXPECT_EQ(d.trits_consumed, 0u);
  for (size_t i = 0; i < s.model.size(); ++i) {
    EXPECT_EQ(d.reconstruction.values[i], static_cast<double>(s.model.mean[i]));
  }
}

INSTANTIATE_TEST_SUITE_P(
    AllStrategies, StrategyTest, ::testing::ValuesIn(AllStrategies()),
    [](const ::testing::TestParamInfo<Strategy>& info) {
      std::string name(StrategyName(info.param));
      for (char& c : name) {
        if (c == '-') c = '_';
      }
      return name;
    });

TEST(CodecTest, PlaneOffsetsAndHeader) {
  const SyntheticSample s = Sample({4, 4, 4}, 3);
  const EncodeResult r = Encode(s.latent, s.model);
  ASSERT_EQ(r.plane_offsets.size(), static_cast<size_t>(r.planes));
  EXPECT_EQ(r.plane_offsets[0], 0u);
  for (size_t i = 1; i < r.plane_offsets.size(); ++i) {
    EXPECT_GE(r.plane_offsets[i], r.plane_offsets[i - 1]);
  }
  const StreamHeader h = StreamHeader::Parse(r.stream);
  EXPECT_EQ(h.pixel_count, 256u * 4 * 4);
  EXPECT_EQ(h.planes, r.planes);
  EXPECT_EQ(h.model_digest, s.model.Digest());
}

TEST(CodecTest, DecoderChecks) {
  const SyntheticSample s = Sample({2, 4, 4}, 3);
  const EncodeResult r = Encode(s.latent, s.model);
  GaussianModel other = s.model;
  other.mean[0] += 1.0f;
  try {
    Decode(r.stream, other);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDigestMismatch);
  }
  // Digest is checked even when only the header is present.
  try {
    Decode(TruncateStream(r.stream, kHeaderSize), other);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDigestMismatch);
  }
  for (size_t pos : {size_t{11}, size_t{28}, size_t{29}}) {
    std::vector<uint8_t> bad = r.stream;
    bad[pos] = pos == 11 ? 0 : 99;
    try {
      Decode(bad, s.model);
      FAIL() << pos;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kCorruptHeader);
    }
  }
  try {
    Decode(std::span<const uint8_t>(r.stream.data(), 20), s.model);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBelowMinimumLength);
  }
}

TEST(ChoosePlanesTest, PercentileRule) {
  std::vector<double> c(100, 0.2);
  c[0] = 40.0;  // single outlier
  EXPECT_EQ(ChoosePlanes(c, Strategy::kTritPlanePriority, 0, 100.0).planes(),
            TritPlanesFor(40));
  EXPECT_EQ(ChoosePlanes(c, Strategy::kTritPlanePriority, 0, 99.0).planes(),
            1);
  EXPECT_EQ(ChoosePlanes(c, Strategy::kBitPlanePriority, 0, 100.0).planes(),
            BitPlanesFor(40));
  EXPECT_EQ(ChoosePlanes(c, Strategy::kTritPlanePriority, 7, 100.0).planes(),
            7);
  EXPECT_EQ(ChoosePlanes({}, Strategy::kTritPlanePriority, 0, 100.0).planes(),
            1);
}

TEST(CodecTest, ClippedOutliersStayDecodable) {
  const SyntheticSample s = Sample({2, 8, 8}, 11);
  LatentTensor y = s.latent;
  y.values[5] = s.model.mean[5] + 500.0;
  EncodeOptions opt;
  opt.clip_percentile = 90.0;
  const EncodeResult r = Encode(y, s.model, opt);
  const DecodeResult d = Decode(r.stream, s.model);
  const PlaneConfig cfg = PlaneConfig::Ternary(r.planes);
  EXPECT_EQ(r.quantized[5], cfg.max_value());
  for (size_t i = 0; i < s.model.size(); ++i) {
    EXPECT_EQ(RoundClamp(d.centered[i], cfg), r.quantized[i]);
  }
}

TEST(RdSweepTest, EndpointsAndRefinement) {
  const SyntheticSample s = Sample({4, 6, 6}, 17);
  const EncodeResult r = Encode(s.latent, s.model);
  const auto two = RdSweep(r.stream, s.model, s.latent, 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].bytes, 0u);
  EXPECT_EQ(two[0].trits, 0u);
  EXPECT_EQ(two[1].bytes, r.payload_bytes);
  EXPECT_EQ(two[1].trits, r.symbols);

  std::vector<double> mu(s.model.mean.begin(), s.model.mean.end());
  EXPECT_DOUBLE_EQ(two[0].mse, MeanSquaredError(mu, s.latent.values));
  const DecodeResult full = Decode(r.stream, s.model);
  EXPECT_EQ(two[1].mse,
            MeanSquaredError(full.reconstruction.values, s.latent.values));
  EXPECT_DOUBLE_EQ(two[1].bits_per_pixel,
                   8.0 * r.payload_bytes / (256.0 * 6 * 6));

  const auto coarse = RdSweep(r.stream, s.model, s.latent, 5);
  const auto fine = RdSweep(r.stream, s.model, s.latent, 9);
  for (size_t i = 0; i < coarse.size(); ++i) {
    EXPECT_EQ(coarse[i].bytes, fine[2 * i].bytes);
    EXPECT_EQ(coarse[i].mse, fine[2 * i].mse);
  }
  // Every record equals an independent decode of its prefix.
  const size_t header = r.stream.size() - r.payload_bytes;
  for (const RDRecord& rec : fine) {
    const DecodeResult d =
        Decode(TruncateStream(r.stream, header + rec.bytes), s.model);
    EXPECT_EQ(rec.trits, d.trits_consumed);
    EXPECT_EQ(rec.mse,
              MeanSquaredError(d.reconstruction.values, s.latent.values));
  }
  EXPECT_THROW(RdSweep(r.stream, s.model, s.latent, 1), Error);
}

TEST(CodecTest, ExpectedDistortionBookkeeping) {
  // Summing delta_d along the transmitted digits of each element telescopes
  // only in expectation; per digit, the child variance the decoder stores is
  // the one the cost model used.
  const SyntheticSample s = Sample({1, 4, 4}, 2);
  const EncodeResult r = Encode(s.latent, s.model);
  const PlaneConfig cfg = PlaneConfig::Ternary(r.planes);
  for (size_t i = 0; i < s.model.size(); ++i) {
    const Sigma sigma(s.model.sigma[i]);
    TruncatedMoments m{0.0, 0.0, sigma.value() * sigma.value()};
    NodeId node;
    const uint64_t level = LevelIndex(r.quantized[i], cfg);
    for (int d = 0; d < cfg.planes(); ++d) {
      const ChildStats st = ComputeChildStats(cfg, node, sigma, m.log_prob);
      double expected_var = 0.0;
      for (int k = 0; k < 3; ++k) expected_var += st.prob[k] * st.child[k].variance;
      EXPECT_NEAR(CostFromStats(st, m).delta_d, expected_var - m.variance,
                  1e-12);
      const int digit = DigitAt(level, d, cfg);
      node = ChildNode(cfg, node, digit);
      m = st.child[digit];
    }
  }
}

}  // namespace
}  // namespace dpts
