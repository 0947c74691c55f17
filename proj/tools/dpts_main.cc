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


// dpts: command-line front end for progressive latent coding.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpts/codec.h"
#include "dpts/common.h"
#include "dpts/container.h"
#include "dpts/harness.h"
#include "dpts/strategy.h"
#include "dpts/tensor_io.h"
#include "json.hpp"

namespace dpts {
namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    case ErrorCode::kIo:
      return kExitIo;
    default:
      return kExitFormat;
  }
}

std::string ReadText(const std::string& path) {
  const std::vector<uint8_t> bytes = ReadFileBytes(path);
  return std::string(bytes.begin(), bytes.end());
}

void WriteText(const std::string& path, const std::string& text) {
  WriteFileBytes(path, std::span<const uint8_t>(
                           reinterpret_cast<const uint8_t*>(text.data()),
                           text.size()));
}

Strategy StrategyArg(const std::string& name) {
  const std::optional<Strategy> s = ParseStrategy(name);
  if (!s) throw Error(ErrorCode::kInvalidArgument, "unknown strategy " + name);
  return *s;
}

void WriteScheduleLog(const std::string& path, const ScheduleLog& log) {
  WriteText(path, nlohmann::json(log.orders).dump() + "\n");
}

std::string RdCsv(const std::vector<RDRecord>& records, uint64_t seed) {
  std::vector<EvaluationRow> rows;
  for (const RDRecord& r : records) rows.push_back({seed, r});
  return ToCsv(rows);
}

struct EncodeArgs {
  std::string latent, model, out, sideinfo, log;
  std::string planes = "auto";
  std::string strategy = "trit-priority";
  double clip_pct = 100.0;
  uint32_t pixel_count = 0;
};

void RunEncode(const EncodeArgs& a) {
  EncodeOptions opt;
  opt.strategy = StrategyArg(a.strategy);
  opt.clip_percentile = a.clip_pct;
  opt.pixel_count = a.pixel_count;
  if (a.planes != "auto") {
    try {
      size_t used = 0;
      opt.planes = std::stoi(a.planes, &used);
      if (used != a.planes.size() || opt.planes < 1) throw std::exception();
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--planes takes a positive integer or auto");
    }
  }
  const LatentTensor y = LatentFromTensorFile(ReadTensorFile(a.latent));
  const GaussianModel model = ModelFromTensorFile(ReadTensorFile(a.model));
  if (!a.sideinfo.empty()) opt.sideinfo = ReadFileBytes(a.sideinfo);
  ScheduleLog log;
  if (!a.log.empty()) opt.log = &log;
  const EncodeResult r = Encode(y, model, opt);
  WriteFileBytes(a.out, r.stream);
  if (!a.log.empty()) WriteScheduleLog(a.log, log);
  std::printf("planes=%d symbols=%llu payload_bytes=%zu ideal_bits=%.3f\n",
              r.planes, static_cast<unsigned long long>(r.symbols),
              r.payload_bytes, r.total_bits);
}

struct DecodeArgs {
  std::string in, model, out, log;
  std::string bytes = "full";
};

void RunDecode(const DecodeArgs& a) {
  std::vector<uint8_t> stream = ReadFileBytes(a.in);
  const GaussianModel model = ModelFromTensorFile(ReadTensorFile(a.model));
  if (a.bytes == "header_only") {
    stream = TruncateStream(stream, ReadStream(stream).MinimumLength());
  } else if (a.bytes != "full") {
    size_t n = 0;
    try {
      size_t used = 0;
      n = std::stoull(a.bytes, &used);
      if (used != a.bytes.size()) throw std::exception();
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--bytes takes an integer, full or header_only");
    }
    stream = TruncateStream(stream, n);
  }
  DecodeOptions opt;
  ScheduleLog log;
  if (!a.log.empty()) opt.log = &log;
  const DecodeResult r = Decode(stream, model, opt);
  WriteTensorFile(a.out, ToTensorFile(r.reconstruction));
  if (!a.log.empty()) WriteScheduleLog(a.log, log);
  std::printf("trits=%llu planes_completed=%.4f\n",
              static_cast<unsigned long long>(r.trits_consumed),
              r.planes_completed);
}

struct CompareArgs {
  std::string spec, csv;
  std::vector<std::string> strategies;
  int matched = 0;
};

void RunCompare(const CompareArgs& a) {
  const std::string text = ReadText(a.spec);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("spec is not valid JSON: ") + e.what());
  }
  const SyntheticSpec base = SyntheticSpecFromJson(text);
  const int tensors = j.value("tensors", 1);
  const int points = j.value("points", 16);
  if (tensors < 1 || points < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "spec needs tensors >= 1 and points >= 2");
  }
  std::vector<Strategy> strategies;
  for (const std::string& s : a.strategies) strategies.push_back(StrategyArg(s));
  if (strategies.empty()) strategies = AllStrategies();

  std::vector<SyntheticSpec> specs;
  nlohmann::json seeds = nlohmann::json::array();
  for (int i = 0; i < tensors; ++i) {
    SyntheticSpec s = base;
    s.seed = base.seed + static_cast<uint64_t>(i);
    specs.push_back(s);
    seeds.push_back(s.seed);
  }
  WriteText(a.csv, ToCsv(Evaluate(strategies, specs, points)));

  nlohmann::json names = nlohmann::json::array();
  for (Strategy s : strategies) names.push_back(StrategyName(s));
  const nlohmann::json meta = {{"spec", nlohmann::json::parse(
                                            SyntheticSpecToJson(base))},
                               {"tensors", tensors},
                               {"points", points},
                               {"seeds", seeds},
                               {"strategies", names}};
  WriteText(a.csv + ".json", meta.dump(2) + "\n");

  if (a.matched > 0) {
    for (const auto& [s, mse] :
         MeanMseAtMatchedRates(strategies, specs, MidpointFractions(a.matched))) {
      std::printf("%-14s mean_mse=%.9g\n", std::string(StrategyName(s)).c_str(),
                  mse);
    }
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"Progressive latent coding with trit-planes"};
  app.require_subcommand(1);

  EncodeArgs enc;
  CLI::App* encode = app.add_subcommand("encode", "Encode a latent tensor");
  encode->add_option("--latent", enc.latent, "Latent tensor (.dptf)")->required();
  encode->add_option("--model", enc.model, "Gaussian model (.dptf)")->required();
  encode->add_option("--out", enc.out, "Output stream (.dpts)")->required();
  encode->add_option("--planes", enc.planes, "Plane count or auto");
  encode->add_option("--clip-pct", enc.clip_pct,
                     "Percentile of |y - mu| covered by auto planes");
  encode->add_option("--strategy", enc.strategy, "Transmission order");
  encode->add_option("--sideinfo", enc.sideinfo, "Opaque side information");
  encode->add_option("--pixel-count", enc.pixel_count,
                     "Bits-per-pixel denominator");
  encode->add_option("--schedule-log", enc.log, "Write visiting orders (JSON)");

  DecodeArgs dec;
  CLI::App* decode = app.add_subcommand("decode", "Decode a stream prefix");
  decode->add_option("--in", dec.in, "Stream (.dpts)")->required();
  decode->add_option("--model", dec.model, "Gaussian model (.dptf)")->required();
  decode->add_option("--out", dec.out, "Reconstruction (.dptf)")->required();
  decode->add_option("--bytes", dec.bytes,
                     "Stream prefix length, full or header_only");
  decode->add_option("--schedule-log", dec.log, "Write visiting orders (JSON)");

  std::string trunc_in, trunc_out;
  size_t trunc_bytes = 0;
  CLI::App* truncate = app.add_subcommand("truncate", "Cut a stream");
  truncate->add_option("--in", trunc_in, "Stream (.dpts)")->required();
  truncate->add_option("--out", trunc_out, "Output stream")->required();
  truncate->add_option("--bytes", trunc_bytes, "Total bytes to keep")
      ->required();

  std::string rd_in, rd_model, rd_ref, rd_csv;
  int rd_points = 0;
  uint64_t rd_seed = 0;
  CLI::App* rd = app.add_subcommand("rd-curve", "RD records of a stream");
  rd->add_option("--in", rd_in, "Stream (.dpts)")->required();
  rd->add_option("--model", rd_model, "Gaussian model (.dptf)")->required();
  rd->add_option("--ref", rd_ref, "Reference latent (.dptf)")->required();
  rd->add_option("--points", rd_points, "Evenly spaced prefixes (>= 2)")
      ->required();
  rd->add_option("--csv", rd_csv, "Output CSV")->required();
  rd->add_option("--seed", rd_seed, "Value of the seed column");

  CompareArgs cmp;
  CLI::App* compare = app.add_subcommand("compare", "RD curves per strategy");
  compare->add_option("--spec", cmp.spec, "Synthetic spec (JSON)")->required();
  compare->add_option("--strategies", cmp.strategies, "Strategies")
      ->delimiter(',');
  compare->add_option("--csv", cmp.csv, "Output CSV")->required();
  compare->add_option("--matched-fractions", cmp.matched,
                      "Also print mean MSE at this many matched rates");

  std::string gen_spec, gen_latent, gen_model;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic latent");
  gen->add_option("--spec", gen_spec, "Synthetic spec (JSON)")->required();
  gen->add_option("--out-latent", gen_latent, "Latent (.dptf)")->required();
  gen->add_option("--out-model", gen_model, "Gaussian model (.dptf)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*encode) {
      RunEncode(enc);
    } else if (*decode) {
      RunDecode(dec);
    } else if (*truncate) {
      WriteFileBytes(trunc_out,
                     TruncateStream(ReadFileBytes(trunc_in), trunc_bytes));
    } else if (*rd) {
      if (rd_points < 2) {
        throw Error(ErrorCode::kInvalidArgument, "--points must be >= 2");
      }
      const std::vector<uint8_t> stream = ReadFileBytes(rd_in);
      const GaussianModel model = ModelFromTensorFile(ReadTensorFile(rd_model));
      const LatentTensor ref = LatentFromTensorFile(ReadTensorFile(rd_ref));
      WriteText(rd_csv, RdCsv(RdSweep(stream, model, ref, rd_points), rd_seed));
    } else if (*compare) {
      RunCompare(cmp);
    } else if (*gen) {
      const SyntheticSample s = Generate(SyntheticSpecFromJson(ReadText(gen_spec)));
      WriteTensorFile(gen_latent, ToTensorFile(s.latent));
      WriteTensorFile(gen_model, ToTensorFile(s.model));
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "dpts: %s\n", e.what());
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "dpts: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace dpts

int main(int argc, char** argv) { return dpts::Main(argc, argv); }
