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

// Range coder over alphabets of up to three symbols with externally supplied
// frequencies.
//
// The coder is first-in first-out, so every byte prefix of a stream decodes
// to a prefix of the symbol sequence. Layout (bit-exact on all platforms):
//
//   * frequencies sum to 2^16;
//   * the coding interval is a 56-bit window [low, low + range) with
//     range in [2^48, 2^56] after renormalization; each renormalization
//     step emits the top byte of low, most significant byte first;
//   * carries propagate into already emitted bytes;
//   * the final flush emits the shortest byte string v such that every
//     continuation of v stays inside the final interval. A stream with no
//     symbols is empty.
//
// The decoder tracks the smallest and largest code values consistent with
// the bytes it has (missing bytes read as 0x00 and 0xFF respectively) and
// accepts a symbol only when both agree. On a truncated stream it therefore
// stops at the first symbol the available bytes do not determine, and never
// returns a wrong symbol.

#ifndef DPTS_ENTROPY_CODER_H_
#define DPTS_ENTROPY_CODER_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dpts {

inline constexpr int kFrequencyBits = 16;
inline constexpr uint32_t kTotalFrequency = 1u << kFrequencyBits;
// Identifies this coder in the stream header.
inline constexpr uint8_t kRangeCoderId = 1;

struct SymbolModel {
  std::array<uint32_t, 3> freq{};

  // Quantizes probabilities (2 or 3 of them, any positive scale) to
  // frequencies summing to 2^16. Every listed symbol receives at least 1;
  // the remainder is distributed by largest remainder, ties to the lower
  // symbol. Unlisted symbols get 0.
  static SymbolModel FromProbabilities(std::span<const double> probs);
  // Throws kInvalidArgument unless the frequencies sum to 2^16.
  static SymbolModel FromFrequencies(std::array<uint32_t, 3> freq);

  uint32_t cumulative(int symbol) const;
  // -log2 of the quantized probability of `symbol`.
  double CostBits(int symbol) const;
};

class RangeEncoder {
 public:
  // Throws kZeroFrequencySymbol if `symbol` has frequency 0.
  void Encode(int symbol, const SymbolModel& model);
  // Bytes emitted so far (excluding the pending flush).
  size_t bytes_emitted() const { return out_.size(); }
  uint64_t symbols_encoded() const { return symbols_; }
  std::vector<uint8_t> Finish();

 private:
  void PropagateCarry();

  uint64_t low_ = 0;
  uint64_t range_ = uint64_t{1} << 56;
  uint64_t symbols_ = 0;
  std::vector<uint8_t> out_;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const uint8_t> bytes);

  // The next symbol, or nullopt once the available bytes no longer
  // determine it (end of prefix). After nullopt every later call also
  // returns nullopt.
  std::optional<int> Decode(const SymbolModel& model);
  uint64_t symbols_decoded() const { return symbols_; }
  bool exhausted() const { return exhausted_; }

 private:
  void ShiftIn();

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
  uint64_t range_ = uint64_t{1} << 56;
  uint64_t code_lo_ = 0;
  uint64_t code_hi_ = 0;
  uint64_t symbols_ = 0;
  bool exhausted_ = false;
};

// Decodes a stream once while tracking, for several byte limits, how many
// symbols each prefix of the stream would yield. Symbols are taken from the
// full stream; a limit drops out at the first symbol its prefix does not
// determine. Equivalent to running one RangeDecoder per prefix.
class PrefixSetDecoder {
 public:
  PrefixSetDecoder(std::span<const uint8_t> bytes,
                   std::span<const size_t> limits);

  // As RangeDecoder::Decode on the full stream. Before returning, the limits
  // that cannot determine this symbol are listed in newly_stopped().
  std::optional<int> Decode(const SymbolModel& model);
  const std::vector<size_t>& newly_stopped() const { return newly_stopped_; }
  bool any_active() const { return active_count_ > 0; }

 private:
  struct Window {
    size_t limit;
    uint64_t lo = 0;
    uint64_t hi = 0;
    bool active = true;
  };
  void ShiftIn();

  std::span<const uint8_t> bytes_;
  std::vector<Window> windows_;  // last entry is the full stream
  std::vector<size_t> newly_stopped_;
  size_t active_count_ = 0;
  size_t pos_ = 0;
  uint64_t range_ = uint64_t{1} << 56;
  bool exhausted_ = false;
};

}  // namespace dpts

#endif  // DPTS_ENTROPY_CODER_H_
