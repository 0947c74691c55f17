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

// Scalable stream (.dpts) layout, all integers little-endian:
//
//   offset  size  field
//        0     4  magic "DPTS"
//        4     1  version (1)
//        5     2  channels C
//        7     2  height H
//        9     2  width W
//       11     1  planes L
//       12     4  pixel_count (bits-per-pixel denominator)
//       16     8  model digest (GaussianModel::Digest)
//       24     4  sideinfo_len
//       28     1  coder id (1 = range coder)
//       29     1  strategy id
//       30     2  reserved, zero
//       32     sideinfo_len bytes of opaque side information
//       ...    entropy-coded payload (may be cut at any byte)

#ifndef DPTS_CONTAINER_H_
#define DPTS_CONTAINER_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dpts/common.h"

namespace dpts {

inline constexpr size_t kHeaderSize = 32;
inline constexpr uint8_t kStreamVersion = 1;

struct StreamHeader {
  uint8_t version = kStreamVersion;
  uint16_t channels = 0;
  uint16_t height = 0;
  uint16_t width = 0;
  uint8_t planes = 0;
  uint32_t pixel_count = 0;
  uint64_t model_digest = 0;
  uint32_t sideinfo_len = 0;
  uint8_t coder_id = 0;
  uint8_t strategy = 0;

  Shape shape() const { return {channels, height, width}; }
  // Throws kDimensionOverflow for dims above 65535.
  void SetShape(const Shape& shape);

  std::array<uint8_t, kHeaderSize> Serialize() const;
  // Throws kBelowMinimumLength for short input, kCorruptHeader for a bad
  // magic, version or reserved field.
  static StreamHeader Parse(std::span<const uint8_t> bytes);

  bool operator==(const StreamHeader&) const = default;
};

struct ScalableBitstream {
  StreamHeader header;
  std::vector<uint8_t> sideinfo;
  std::vector<uint8_t> payload;

  size_t MinimumLength() const { return kHeaderSize + sideinfo.size(); }
};

// header.sideinfo_len is taken from `sideinfo`. Throws kDimensionOverflow if
// the side information does not fit its 32-bit length field.
std::vector<uint8_t> WriteStream(StreamHeader header,
                                 std::span<const uint8_t> sideinfo,
                                 std::span<const uint8_t> payload);
// Any prefix holding the complete header and side information parses; the
// payload is whatever follows.
ScalableBitstream ReadStream(std::span<const uint8_t> bytes);
// Byte prefix of a stream. Throws kBelowMinimumLength when target_bytes
// would cut into the header or side information.
std::vector<uint8_t> TruncateStream(std::span<const uint8_t> bytes,
                                    size_t target_bytes);

}  // namespace dpts

#endif  // DPTS_CONTAINER_H_
