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

#include <algorithm>
#include <cmath>
#include <string>

#include "dpts/common.h"

namespace dpts {
namespace {

constexpr uint64_t kTop = uint64_t{1} << 56;
constexpr uint64_t kBottom = uint64_t{1} << 48;
constexpr uint64_t kWindowMask = kTop - 1;
constexpr int kWindowBytes = 7;

}  // namespace

SymbolModel SymbolModel::FromProbabilities(std::span<const double> probs) {
  const size_t n = probs.size();
  if (n < 2 || n > 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "symbol models have 2 or 3 symbols");
  }
  double sum = 0.0;
  for (double p : probs) sum += (p > 0.0 && std::isfinite(p)) ? p : 0.0;

  const uint32_t budget = kTotalFrequency - static_cast<uint32_t>(n);
  std::array<uint32_t, 3> base{};
  std::array<double, 3> rem{-1.0, -1.0, -1.0};
  uint32_t used = 0;
  for (size_t k = 0; k < n; ++k) {
    double p = (probs[k] > 0.0 && std::isfinite(probs[k])) ? probs[k] : 0.0;
    const double exact = sum > 0.0 ? p / sum * budget : double(budget) / n;
    base[k] = static_cast<uint32_t>(std::floor(exact));
    rem[k] = exact - base[k];
    used += base[k];
  }
  // Largest remainder; each symbol receives at most one extra count.
  uint32_t leftover = budget - std::min(used, budget);
  while (leftover > 0) {
    size_t best = 0;
    for (size_t k = 1; k < n; ++k) {
      if (rem[k] > rem[best]) best = k;
    }
    if (rem[best] < 0.0) {
      // Every symbol already received one; spread what is left evenly.
      for (size_t k = 0; k < n && leftover > 0; ++k, --leftover) ++base[k];
      continue;
    }
    ++base[best];
    rem[best] = -1.0;
    --leftover;
  }
  SymbolModel m;
  for (size_t k = 0; k < n; ++k) m.freq[k] = base[k] + 1;
  return m;
}

SymbolModel SymbolModel::FromFrequencies(std::array<uint32_t, 3> freq) {
  if (uint64_t{freq[0]} + freq[1] + freq[2] != kTotalFrequency) {
    throw Error(ErrorCode::kInvalidArgument,
                "symbol frequencies must sum to 65536");
  }
  SymbolModel m;
  m.freq = freq;
  return m;
}

uint32_t SymbolModel::cumulative(int symbol) const {
  uint32_t c = 0;
  for (int k = 0; k < symbol; ++k) c += freq[k];
  return c;
}

double SymbolModel::CostBits(int symbol) const {
  return kFrequencyBits - std::log2(static_cast<double>(freq[symbol]));
}

void RangeEncoder::PropagateCarry() {
  for (size_t i = out_.size(); i-- > 0;) {
    if (++out_[i] != 0) return;
  }
}

void RangeEncoder::Encode(int symbol, const SymbolModel& model) {
  if (symbol < 0 || symbol > 2 || model.freq[symbol] == 0) {
    throw Error(ErrorCode::kZeroFrequencySymbol,
                "symbol " + std::to_string(symbol) +
                    " has zero frequency in its model");
  }
  const uint64_t r = range_ >> kFrequencyBits;
  low_ += r * model.cumulative(symbol);
  range_ = r * model.freq[symbol];
  if (low_ >= kTop) {
    low_ -= kTop;
    PropagateCarry();
  }
  while (range_ < kBottom) {
    out_.push_back(static_cast<uint8_t>(low_ >> 48));
    low_ = (low_ << 8) & kWindowMask;
    range_ <<= 8;
  }
  ++symbols_;
}

std::vector<uint8_t> RangeEncoder::Finish() {
  if (symbols_ == 0) return std::move(out_);
  // Shortest prefix of the window whose every continuation stays inside
  // [low, low + range).
  const uint64_t last = low_ + range_ - 1;
  for (int n = 0; n <= kWindowBytes; ++n) {
    const int shift = 8 * (kWindowBytes - n);
    const uint64_t mask = shift == 56 ? kWindowMask : (uint64_t{1} << shift) - 1;
    uint64_t v = (low_ + mask) & ~mask;
    if (v + mask > last) continue;
    if (v >= kTop) {
      v -= kTop;
      PropagateCarry();
    }
    for (int i = 0; i < n; ++i) {
      out_.push_back(static_cast<uint8_t>(v >> (48 - 8 * i)));
    }
    break;
  }
  low_ = 0;
  range_ = kTop;
  return std::move(out_);
}

RangeDecoder::RangeDecoder(std::span<const uint8_t> bytes) : bytes_(bytes) {
  for (int i = 0; i < kWindowBytes; ++i) ShiftIn();
}

void RangeDecoder::ShiftIn() {
  // Missing bytes bound the code from below with 0x00, from above with 0xFF.
  const bool have = pos_ < bytes_.size();
  const uint8_t b = have ? bytes_[pos_] : 0;
  code_lo_ = (code_lo_ << 8) | (have ? b : 0x00);
  code_hi_ = (code_hi_ << 8) | (have ? b : 0xFF);
  ++pos_;
}

std::optional<int> RangeDecoder::Decode(const SymbolModel& model) {
  if (exhausted_) return std::nullopt;
  const uint64_t r = range_ >> kFrequencyBits;
  auto symbol_at = [&](uint64_t code) {
    const uint64_t v = std::min<uint64_t>(code / r, kTotalFrequency - 1);
    if (v < model.freq[0]) return 0;
    if (v < model.freq[0] + model.freq[1]) return 1;
    return 2;
  };
  const int s = symbol_at(code_lo_);
  if (symbol_at(code_hi_) != s) {
    exhausted_ = true;
    return std::nullopt;
  }
  const uint64_t base = r * model.cumulative(s);
  range_ = r * model.freq[s];
  code_lo_ -= base;
  code_hi_ = std::min(code_hi_ - base, range_ - 1);
  while (range_ < kBottom) {
    ShiftIn();
    range_ <<= 8;
  }
  ++symbols_;
  return s;
}

PrefixSetDecoder::PrefixSetDecoder(std::span<const uint8_t> bytes,
                                   std::span<const size_t> limits)
    : bytes_(bytes) {
  for (size_t limit : limits) {
    windows_.push_back({std::min(limit, bytes.size())});
  }
  windows_.push_back({bytes.size()});
  active_count_ = limits.size();
  for (int i = 0; i < kWindowBytes; ++i) ShiftIn();
}

void PrefixSetDecoder::ShiftIn() {
  const uint8_t b = pos_ < bytes_.size() ? bytes_[pos_] : 0;
  for (Window& w : windows_) {
    const bool have = pos_ < w.limit;
    w.lo = (w.lo << 8) | (have ? b : 0x00);
    w.hi = (w.hi << 8) | (have ? b : 0xFF);
  }
  ++pos_;
}

std::optional<int> PrefixSetDecoder::Decode(const SymbolModel& model) {
  newly_stopped_.clear();
  if (exhausted_) return std::nullopt;
  const uint64_t r = range_ >> kFrequencyBits;
  auto symbol_at = [&](uint64_t code) {
    const uint64_t v = std::min<uint64_t>(code / r, kTotalFrequency - 1);
    if (v < model.freq[0]) return 0;
    if (v < model.freq[0] + model.freq[1]) return 1;
    return 2;
  };
  Window& full = windows_.back();
  const int s = symbol_at(full.lo);
  if (symbol_at(full.hi) != s) {
    exhausted_ = true;
    for (size_t i = 0; i + 1 < windows_.size(); ++i) {
      if (windows_[i].active) newly_stopped_.push_back(i);
      windows_[i].active = false;
    }
    active_count_ = 0;
    return std::nullopt;
  }
  const uint64_t base = r * model.cumulative(s);
  range_ = r * model.freq[s];
  for (size_t i = 0; i < windows_.size(); ++i) {
    Window& w = windows_[i];
    if (!w.active) continue;
    if (i + 1 < windows_.size() &&
        (symbol_at(w.lo) != s || symbol_at(w.hi) != s)) {
      w.active = false;
      newly_stopped_.push_back(i);
      --active_count_;
      continue;
    }
    w.lo -= base;
    w.hi = std::min(w.hi - base, range_ - 1);
  }
  while (range_ < kBottom) {
    ShiftIn();
    range_ <<= 8;
  }
  return s;
}

}  // namespace dpts
