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

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <string>

#include "dpts/baselines.h"
#include "dpts/container.h"
#include "dpts/entropy_coder.h"
#include "dpts/kernels.h"
#include "dpts/parallel.h"
#include "dpts/priority.h"

namespace dpts {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Per-element decoding state shared by the encoder and all decoders: the
// node reached so far and its cached conditional moments.
struct ElementStates {
  std::vector<NodeId> node;
  std::vector<TruncatedMoments> moments;

  explicit ElementStates(const GaussianModel& model)
      : node(model.size()), moments(model.size()) {
    for (size_t i = 0; i < model.size(); ++i) {
      const double s = model.sigma[i];
      moments[i] = {0.0, 0.0, s * s};
    }
  }

  std::vector<double> Means() const {
    std::vector<double> out(moments.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = moments[i].mean;
    return out;
  }
};

// Callback deciding the digit of element `e` given its child statistics.
// Returns nullopt to end the schedule (encoder never does).
template <typename CodeFn>
void RunSchedule(const PlaneConfig& cfg, Strategy strategy,
                 const GaussianModel& model, ElementStates& st,
                 ScheduleLog* log, CodeFn&& code,
                 const std::function<void(int)>& on_plane = nullptr) {
  const size_t n = model.size();
  auto apply = [&](uint32_t e, const ChildStats& stats) {
    const std::optional<int> digit = code(e, stats);
    if (!digit) return false;
    st.node[e] = ChildNode(cfg, st.node[e], *digit);
    st.moments[e] = stats.child[*digit];
    return true;
  };

  if (IsPlaneMajor(strategy)) {
    std::vector<ChildStats> stats(n);
    std::vector<TritCost> costs(
        strategy == Strategy::kTritPlaneRaster ? 0 : n);
    for (int depth = 0; depth < cfg.planes(); ++depth) {
      if (on_plane) on_plane(depth);
      ParallelFor(n, [&](size_t begin, size_t end) {
        for (size_t e = begin; e < end; ++e) {
          stats[e] = ComputeChildStats(cfg, st.node[e], Sigma(model.sigma[e]),
                                       st.moments[e].log_prob);
          if (!costs.empty()) {
            costs[e] = CostFromStats(stats[e], st.moments[e]);
            costs[e].element = static_cast<uint32_t>(e);
          }
        }
      });
      std::vector<uint32_t> order;
      if (strategy == Strategy::kTritPlaneRaster) {
        order.resize(n);
        std::iota(order.begin(), order.end(), 0u);
      } else {
        order = strategy == Strategy::kTritPlaneReverse
                    ? ReversePlaneOrder(costs)
                    : PlaneOrder(costs);
        for (const TritCost& c : costs) {
          if (c.skip) order.push_back(c.element);
        }
      }
      if (log) log->orders.push_back(order);
      for (uint32_t e : order) {
        if (!apply(e, stats[e])) return;
      }
    }
    return;
  }

  std::vector<uint32_t> order;
  switch (strategy) {
    case Strategy::kChannelSort:
      order = ChannelSortOrder(model, cfg.max_magnitude());
      break;
    case Strategy::kLatentSort:
      order = LatentSortOrder(model, cfg.max_magnitude());
      break;
    default:
      order.resize(n);
      std::iota(order.begin(), order.end(), 0u);
      break;
  }
  if (on_plane) on_plane(0);
  if (log) log->orders.push_back(order);
  for (uint32_t e : order) {
    const Sigma sigma(model.sigma[e]);
    for (int depth = 0; depth < cfg.planes(); ++depth) {
      const ChildStats stats =
          ComputeChildStats(cfg, st.node[e], sigma, st.moments[e].log_prob);
      if (!apply(e, stats)) return;
    }
  }
}

SymbolModel ModelFor(const ChildStats& stats) {
  return SymbolModel::FromProbabilities(
      std::span<const double>(stats.prob.data(), stats.count));
}

PlaneConfig MakeConfig(Strategy strategy, int planes) {
  return StrategyRadix(strategy) == 2 ? PlaneConfig::Binary(planes)
                                      : PlaneConfig::Ternary(planes);
}

struct OpenedStream {
  StreamHeader header;
  Strategy strategy;
  PlaneConfig cfg;
  std::span<const uint8_t> payload;
};

OpenedStream OpenStream(std::span<const uint8_t> stream,
                        const GaussianModel& model) {
  model.Validate();
  const StreamHeader header = StreamHeader::Parse(stream);
  if (header.model_digest != model.Digest()) {
    throw Error(ErrorCode::kDigestMismatch,
                "stream was encoded with a different model");
  }
  if (header.shape() != model.shape) {
    throw Error(ErrorCode::kShapeMismatch,
                "stream shape differs from the model shape");
  }
  if (header.coder_id != kRangeCoderId) {
    throw Error(ErrorCode::kCorruptHeader,
                "unknown coder id " + std::to_string(header.coder_id));
  }
  const std::optional<Strategy> strategy = StrategyFromId(header.strategy);
  if (!strategy) {
    throw Error(ErrorCode::kCorruptHeader,
                "unknown strategy id " + std::to_string(header.strategy));
  }
  const int max_planes = StrategyRadix(*strategy) == 2
                             ? PlaneConfig::kMaxBitPlanes
                             : PlaneConfig::kMaxTritPlanes;
  if (header.planes < 1 || header.planes > max_planes) {
    throw Error(ErrorCode::kCorruptHeader,
                "invalid plane count " + std::to_string(header.planes));
  }
  const size_t start = kHeaderSize + header.sideinfo_len;
  if (stream.size() < start) {
    throw Error(ErrorCode::kBelowMinimumLength,
                "stream ends inside the side information");
  }
  return {header, *strategy, MakeConfig(*strategy, header.planes),
          stream.subspan(start)};
}

double BitsPerPixel(size_t bytes, uint32_t pixel_count) {
  return pixel_count == 0 ? 0.0 : 8.0 * static_cast<double>(bytes) /
                                        static_cast<double>(pixel_count);
}

}  // namespace

PlaneConfig ChoosePlanes(std::span<const double> centered, Strategy strategy,
                         int planes, double clip_percentile) {
  if (planes > 0) return MakeConfig(strategy, planes);
  if (planes < 0) {
    throw Error(ErrorCode::kInvalidArgument, "plane count must be >= 0");
  }
  if (!(clip_percentile > 0.0 && clip_percentile <= 100.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "clip percentile must be in (0, 100]");
  }
  int64_t max_abs = 0;
  if (!centered.empty()) {
    std::vector<int64_t> mags(centered.size());
    for (size_t i = 0; i < mags.size(); ++i) {
      const double r = std::fabs(std::round(centered[i]));
      mags[i] = r >= 4e18 ? int64_t{4000000000000000000} :
                            static_cast<int64_t>(r);
    }
    // Nearest-rank percentile.
    const double rank = std::ceil(clip_percentile / 100.0 * mags.size());
    const size_t k = std::clamp<size_t>(static_cast<size_t>(rank), 1,
                                        mags.size()) - 1;
    std::nth_element(mags.begin(), mags.begin() + k, mags.end());
    max_abs = mags[k];
  }
  return MakeConfig(strategy, StrategyRadix(strategy) == 2
                                  ? BitPlanesFor(max_abs)
                                  : TritPlanesFor(max_abs));
}

EncodeResult Encode(const LatentTensor& y, const GaussianModel& model,
                    const EncodeOptions& options) {
  model.Validate();
  if (y.shape != model.shape || y.values.size() != model.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "latent and model shapes differ");
  }
  for (double v : y.values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "latent has non-finite values");
    }
  }
  const KernelTable& k = Kernels();
  const size_t n = model.size();
  std::vector<double> centered(n);
  k.subtract(y.values, model.mean, centered);
  const PlaneConfig cfg = ChoosePlanes(centered, options.strategy,
                                       options.planes, options.clip_percentile);

  std::vector<double> rounded(n);
  k.round_clamp(centered, static_cast<double>(cfg.min_value()),
                static_cast<double>(cfg.max_value()), rounded);
  EncodeResult result;
  result.planes = cfg.planes();
  result.quantized.resize(n);
  std::vector<uint64_t> levels(n);
  for (size_t i = 0; i < n; ++i) {
    const int64_t q = std::clamp(static_cast<int64_t>(rounded[i]),
                                 cfg.min_value(), cfg.max_value());
    result.quantized[i] = q;
    levels[i] = LevelIndex(q, cfg);
  }

  StreamHeader header;
  header.SetShape(model.shape);
  header.planes = static_cast<uint8_t>(cfg.planes());
  if (options.pixel_count != 0) {
    header.pixel_count = options.pixel_count;
  } else {
    const uint64_t pixels = uint64_t{256} * model.shape.height *
                            model.shape.width;
    if (pixels > UINT32_MAX) {
      throw Error(ErrorCode::kDimensionOverflow,
                  "default pixel count exceeds 32 bits");
    }
    header.pixel_count = static_cast<uint32_t>(pixels);
  }
  header.model_digest = model.Digest();
  header.coder_id = kRangeCoderId;
  header.strategy = static_cast<uint8_t>(options.strategy);

  ElementStates st(model);
  RangeEncoder enc;
  double nats = 0.0;
  RunSchedule(
      cfg, options.strategy, model, st, options.log,
      [&](uint32_t e, const ChildStats& stats) -> std::optional<int> {
        const int digit = DigitAt(levels[e], st.node[e].depth, cfg);
        enc.Encode(digit, ModelFor(stats));
        nats += st.moments[e].log_prob - stats.child[digit].log_prob;
        return digit;
      },
      [&](int) { result.plane_offsets.push_back(enc.bytes_emitted()); });
  result.symbols = enc.symbols_encoded();
  result.total_bits = nats / kLn2;
  const std::vector<uint8_t> payload = enc.Finish();
  result.payload_bytes = payload.size();
  result.stream = WriteStream(header, options.sideinfo, payload);
  return result;
}

DecodeResult Decode(std::span<const uint8_t> stream,
                    const GaussianModel& model, const DecodeOptions& options) {
  const OpenedStream s = OpenStream(stream, model);
  ElementStates st(model);
  RangeDecoder dec(s.payload);
  uint64_t consumed = 0;
  RunSchedule(s.cfg, s.strategy, model, st, options.log,
              [&](uint32_t, const ChildStats& stats) -> std::optional<int> {
                if (consumed >= options.max_symbols) return std::nullopt;
                const std::optional<int> d = dec.Decode(ModelFor(stats));
                if (d) ++consumed;
                return d;
              });

  DecodeResult r;
  const size_t n = model.size();
  r.centered = st.Means();
  r.reconstruction = LatentTensor(model.shape);
  Kernels().add(r.centered, model.mean, r.reconstruction.values);
  r.depth.resize(n);
  uint64_t depth_sum = 0;
  for (size_t i = 0; i < n; ++i) {
    r.depth[i] = st.node[i].depth;
    depth_sum += static_cast<uint64_t>(r.depth[i]);
  }
  r.trits_consumed = consumed;
  r.planes_completed =
      n == 0 ? 0.0 : static_cast<double>(depth_sum) / static_cast<double>(n);
  return r;
}

std::vector<RDRecord> RdAtBudgets(std::span<const uint8_t> stream,
                                  const GaussianModel& model,
                                  const LatentTensor& y_ref,
                                  std::span<const size_t> payload_budgets) {
  const OpenedStream s = OpenStream(stream, model);
  if (y_ref.shape != model.shape || y_ref.values.size() != model.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "reference and model shapes differ");
  }
  const size_t m = payload_budgets.size();
  std::vector<size_t> limits(m);
  for (size_t i = 0; i < m; ++i) {
    limits[i] = std::min(payload_budgets[i], s.payload.size());
  }
  std::vector<RDRecord> records(m);
  for (size_t i = 0; i < m; ++i) {
    records[i].strategy = s.strategy;
    records[i].bytes = limits[i];
    records[i].bits_per_pixel = BitsPerPixel(limits[i], s.header.pixel_count);
  }

  const KernelTable& k = Kernels();
  ElementStates st(model);
  std::vector<double> recon(model.size());
  uint64_t decoded = 0;
  auto snapshot = [&](std::span<const size_t> which) {
    if (which.empty()) return;
    k.add(st.Means(), model.mean, recon);
    const double mse =
        model.size() == 0
            ? 0.0
            : k.squared_error(recon, y_ref.values) /
                  static_cast<double>(model.size());
    for (size_t i : which) {
      records[i].mse = mse;
      records[i].trits = decoded;
    }
  };

  PrefixSetDecoder dec(s.payload, limits);
  std::vector<bool> done(m, false);
  RunSchedule(s.cfg, s.strategy, model, st, nullptr,
              [&](uint32_t, const ChildStats& stats) -> std::optional<int> {
                if (!dec.any_active()) return std::nullopt;
                const std::optional<int> d = dec.Decode(ModelFor(stats));
                snapshot(dec.newly_stopped());
                for (size_t i : dec.newly_stopped()) done[i] = true;
                if (d) ++decoded;
                return d;
              });
  std::vector<size_t> rest;
  for (size_t i = 0; i < m; ++i) {
    if (!done[i]) rest.push_back(i);
  }
  snapshot(rest);
  return records;
}

std::vector<RDRecord> RdSweep(std::span<const uint8_t> stream,
                              const GaussianModel& model,
                              const LatentTensor& y_ref, int points) {
  if (points < 2) {
    throw Error(ErrorCode::kInvalidArgument, "an RD sweep needs >= 2 points");
  }
  const StreamHeader header = StreamHeader::Parse(stream);
  const size_t start = kHeaderSize + header.sideinfo_len;
  const size_t payload = stream.size() > start ? stream.size() - start : 0;
  std::vector<size_t> budgets(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    budgets[i] = static_cast<size_t>(
        (static_cast<unsigned __int128>(payload) * static_cast<unsigned>(i) +
         static_cast<unsigned>(points - 1) / 2) /
        static_cast<unsigned>(points - 1));
  }
  return RdAtBudgets(stream, model, y_ref, budgets);
}

double MeanSquaredError(std::span<const double> a,
                        std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kShapeMismatch, "MSE operands differ in size");
  }
  if (a.empty()) return 0.0;
  return Kernels().squared_error(a, b) / static_cast<double>(a.size());
}

}  // namespace dpts
