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


#include "dpts/harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "json.hpp"

namespace dpts {
namespace {

using nlohmann::json;

constexpr double kTwoPi = 6.283185307179586476925;

// Uniform on (0, 1) from the top 53 bits.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double Uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Box-Muller; the second variate is kept for the next call.
  double Normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(Uniform()));
    const double t = kTwoPi * Uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

const char* LawName(SigmaLaw law) {
  switch (law) {
    case SigmaLaw::kConstant:
      return "constant";
    case SigmaLaw::kLogUniform:
      return "log_uniform";
    case SigmaLaw::kChannelDecay:
      return "channel_decay";
  }
  return "";
}

}  // namespace

SyntheticSpec SyntheticSpecFromJson(const std::string& json_text) {
  SyntheticSpec spec;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "spec must be a JSON object");
  }
  try {
    spec.shape.channels = j.value("channels", spec.shape.channels);
    spec.shape.height = j.value("height", spec.shape.height);
    spec.shape.width = j.value("width", spec.shape.width);
    const std::string law = j.value("sigma_law", LawName(spec.law));
    if (law == "constant") {
      spec.law = SigmaLaw::kConstant;
    } else if (law == "log_uniform") {
      spec.law = SigmaLaw::kLogUniform;
    } else if (law == "channel_decay") {
      spec.law = SigmaLaw::kChannelDecay;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown sigma_law " + law);
    }
    spec.sigma = j.value("sigma", spec.sigma);
    spec.sigma_min = j.value("sigma_min", spec.sigma_min);
    spec.sigma_max = j.value("sigma_max", spec.sigma_max);
    spec.decay = j.value("decay", spec.decay);
    spec.mean_scale = j.value("mean_scale", spec.mean_scale);
    spec.seed = j.value("seed", spec.seed);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("bad spec field: ") + e.what());
  }
  const bool ok = spec.sigma > 0.0 && spec.sigma_min > 0.0 &&
                  spec.sigma_max >= spec.sigma_min && spec.decay > 0.0 &&
                  spec.decay <= 1.0 && spec.mean_scale >= 0.0 &&
                  std::isfinite(spec.sigma_max) && std::isfinite(spec.sigma);
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "spec values out of range");
  return spec;
}

std::string SyntheticSpecToJson(const SyntheticSpec& spec) {
  const json j = {{"channels", spec.shape.channels},
                  {"height", spec.shape.height},
                  {"width", spec.shape.width},
                  {"sigma_law", LawName(spec.law)},
                  {"sigma", spec.sigma},
                  {"sigma_min", spec.sigma_min},
                  {"sigma_max", spec.sigma_max},
                  {"decay", spec.decay},
                  {"mean_scale", spec.mean_scale},
                  {"seed", spec.seed}};
  return j.dump();
}

SyntheticSample Generate(const SyntheticSpec& spec) {
  SyntheticSample s{LatentTensor(spec.shape), GaussianModel(spec.shape)};
  Rng rng(spec.seed);
  const size_t plane = spec.shape.height * spec.shape.width;
  const double log_lo = std::log(spec.sigma_min);
  const double log_hi = std::log(spec.sigma_max);
  for (size_t i = 0; i < s.model.size(); ++i) {
    double sigma = spec.sigma;
    if (spec.law == SigmaLaw::kLogUniform) {
      sigma = std::exp(log_lo + (log_hi - log_lo) * rng.Uniform());
    } else if (spec.law == SigmaLaw::kChannelDecay) {
      const double c = static_cast<double>(i / plane);
      sigma = std::max(spec.sigma_min,
                       spec.sigma_max * std::pow(spec.decay, c));
    }
    s.model.sigma[i] = static_cast<float>(sigma);
  }
  for (size_t i = 0; i < s.model.size(); ++i) {
    s.model.mean[i] = static_cast<float>(spec.mean_scale * rng.Normal());
  }
  for (size_t i = 0; i < s.model.size(); ++i) {
    s.latent.values[i] = static_cast<double>(s.model.mean[i]) +
                         static_cast<double>(s.model.sigma[i]) * rng.Normal();
  }
  return s;
}

std::vector<EvaluationRow> Evaluate(const std::vector<Strategy>& strategies,
                                    const std::vector<SyntheticSpec>& tensors,
                                    int points) {
  std::vector<EvaluationRow> rows;
  for (const SyntheticSpec& spec : tensors) {
    const SyntheticSample sample = Generate(spec);
    std::vector<Strategy> sorted = strategies;
    std::sort(sorted.begin(), sorted.end());
    for (Strategy strategy : sorted) {
      EncodeOptions opt;
      opt.strategy = strategy;
      const EncodeResult enc = Encode(sample.latent, sample.model, opt);
      for (const RDRecord& r :
           RdSweep(enc.stream, sample.model, sample.latent, points)) {
        rows.push_back({spec.seed, r});
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const EvaluationRow& a, const EvaluationRow& b) {
                     if (a.seed != b.seed) return a.seed < b.seed;
                     if (a.record.strategy != b.record.strategy) {
                       return a.record.strategy < b.record.strategy;
                     }
                     return a.record.bytes < b.record.bytes;
                   });
  return rows;
}

std::string ToCsv(const std::vector<EvaluationRow>& rows) {
  std::string out = "strategy,bytes,bpp,mse,seed\n";
  char buf[160];
  for (const EvaluationRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%zu,%.17g,%.17g,%llu\n",
                  std::string(StrategyName(row.record.strategy)).c_str(),
                  row.record.bytes, row.record.bits_per_pixel, row.record.mse,
                  static_cast<unsigned long long>(row.seed));
    out += buf;
  }
  return out;
}

std::map<Strategy, double> MeanMseAtMatchedRates(
    const std::vector<Strategy>& strategies,
    const std::vector<SyntheticSpec>& tensors,
    const std::vector<double>& fractions) {
  std::map<Strategy, double> sums;
  for (Strategy s : strategies) sums[s] = 0.0;
  for (const SyntheticSpec& spec : tensors) {
    const SyntheticSample sample = Generate(spec);
    EncodeOptions ref_opt;
    ref_opt.strategy = Strategy::kTritPlanePriority;
    const size_t ref_bytes =
        Encode(sample.latent, sample.model, ref_opt).payload_bytes;
    std::vector<size_t> budgets;
    for (double f : fractions) {
      budgets.push_back(static_cast<size_t>(
          std::llround(f * static_cast<double>(ref_bytes))));
    }
    for (Strategy s : strategies) {
      EncodeOptions opt;
      opt.strategy = s;
      const EncodeResult enc = Encode(sample.latent, sample.model, opt);
      for (const RDRecord& r :
           RdAtBudgets(enc.stream, sample.model, sample.latent, budgets)) {
        sums[s] += r.mse;
      }
    }
  }
  const double count =
      static_cast<double>(tensors.size() * fractions.size());
  for (auto& [s, v] : sums) v = count > 0 ? v / count : 0.0;
  return sums;
}

std::vector<double> MidpointFractions(int count) {
  std::vector<double> out;
  for (int i = 1; i <= count; ++i) {
    out.push_back((i - 0.5) / count);
  }
  return out;
}

}  // namespace dpts
