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

#ifndef DPTS_COMMON_H_
#define DPTS_COMMON_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpts {

enum class ErrorCode {
  kInvalidArgument,
  kShapeMismatch,
  kNonPositiveSigma,
  kInvalidTrit,
  kZeroFrequencySymbol,
  kDimensionOverflow,
  kBelowMinimumLength,
  kCorruptHeader,
  kDigestMismatch,
  kIo,
};

// All library failures are reported as Error; the code lets the CLI map
// failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct Shape {
  size_t channels = 0;
  size_t height = 0;
  size_t width = 0;

  size_t size() const { return channels * height * width; }
  bool operator==(const Shape&) const = default;
};

// Row-major C x H x W real tensor. Element index is raster order
// (channel-major, then row, then column).
struct LatentTensor {
  Shape shape;
  std::vector<double> values;

  LatentTensor() = default;
  explicit LatentTensor(Shape s) : shape(s), values(s.size(), 0.0) {}
  size_t size() const { return values.size(); }
};

// Per-element Gaussian parameters shared by encoder and decoder. Stored in
// single precision because that is the interchange precision; both sides see
// the same values.
struct GaussianModel {
  Shape shape;
  std::vector<float> mean;
  std::vector<float> sigma;

  GaussianModel() = default;
  explicit GaussianModel(Shape s)
      : shape(s), mean(s.size(), 0.0f), sigma(s.size(), 1.0f) {}
  size_t size() const { return sigma.size(); }

  // Throws kShapeMismatch / kNonPositiveSigma.
  void Validate() const;
  // 64-bit FNV-1a over dims and the little-endian float32 bytes of the
  // mean and sigma planes.
  uint64_t Digest() const;
};

}  // namespace dpts

#endif  // DPTS_COMMON_H_
