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

// Tensor file (.dptf):
//
//   "DPTF" | u8 dtype (0 = float32) | u8 rank | rank x u16 dims |
//   row-major little-endian payload
//
// Latents are rank 3 (C, H, W). A Gaussian model is rank 4 (2, C, H, W):
// plane 0 holds the means, plane 1 the standard deviations.

#ifndef DPTS_TENSOR_IO_H_
#define DPTS_TENSOR_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dpts/common.h"

namespace dpts {

inline constexpr uint8_t kDtypeFloat32 = 0;

struct TensorFile {
  std::vector<uint16_t> dims;
  std::vector<float> data;

  size_t element_count() const;
};

std::vector<uint8_t> SerializeTensor(const TensorFile& t);
// Throws kCorruptHeader on malformed input.
TensorFile ParseTensor(std::span<const uint8_t> bytes);

// Throw kIo on filesystem errors.
std::vector<uint8_t> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::span<const uint8_t> bytes);

TensorFile ReadTensorFile(const std::string& path);
void WriteTensorFile(const std::string& path, const TensorFile& t);

// Conversions; throw kDimensionOverflow / kShapeMismatch.
TensorFile ToTensorFile(const LatentTensor& t);
TensorFile ToTensorFile(const GaussianModel& m);
LatentTensor LatentFromTensorFile(const TensorFile& t);
GaussianModel ModelFromTensorFile(const TensorFile& t);

}  // namespace dpts

#endif  // DPTS_TENSOR_IO_H_
