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


#include "dpts/container.h"

#include <algorithm>
#include <string>

#include "byte_io.h"

namespace dpts {

void StreamHeader::SetShape(const Shape& shape) {
  if (shape.channels > 0xFFFF || shape.height > 0xFFFF ||
      shape.width > 0xFFFF) {
    throw Error(ErrorCode::kDimensionOverflow,
                "tensor dimensions must fit in 16 bits");
  }
  channels = static_cast<uint16_t>(shape.channels);
  height = static_cast<uint16_t>(shape.height);
  width = static_cast<uint16_t>(shape.width);
}

std::array<uint8_t, kHeaderSize> StreamHeader::Serialize() const {
  std::array<uint8_t, kHeaderSize> b{};
  b[0] = 'D';
  b[1] = 'P';
  b[2] = 'T';
  b[3] = 'S';
  b[4] = version;
  StoreLE<uint16_t>(&b[5], channels);
  StoreLE<uint16_t>(&b[7], height);
  StoreLE<uint16_t>(&b[9], width);
  b[11] = planes;
  StoreLE<uint32_t>(&b[12], pixel_count);
  StoreLE<uint64_t>(&b[16], model_digest);
  StoreLE<uint32_t>(&b[24], sideinfo_len);
  b[28] = coder_id;
  b[29] = strategy;
  return b;
}

StreamHeader StreamHeader::Parse(std::span<const uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    throw Error(ErrorCode::kBelowMinimumLength,
                "stream shorter than its 32-byte header");
  }
  const uint8_t* b = bytes.data();
  if (b[0] != 'D' || b[1] != 'P' || b[2] != 'T' || b[3] != 'S') {
    throw Error(ErrorCode::kCorruptHeader, "bad stream magic");
  }
  StreamHeader h;
  h.version = b[4];
  if (h.version != kStreamVersion) {
    throw Error(ErrorCode::kCorruptHeader,
                "unsupported stream version " + std::to_string(h.version));
  }
  h.channels = LoadLE<uint16_t>(&b[5]);
  h.height = LoadLE<uint16_t>(&b[7]);
  h.width = LoadLE<uint16_t>(&b[9]);
  h.planes = b[11];
  h.pixel_count = LoadLE<uint32_t>(&b[12]);
  h.model_digest = LoadLE<uint64_t>(&b[16]);
  h.sideinfo_len = LoadLE<uint32_t>(&b[24]);
  h.coder_id = b[28];
  h.strategy = b[29];
  if (b[30] != 0 || b[31] != 0) {
    throw Error(ErrorCode::kCorruptHeader, "reserved header bytes not zero");
  }
  return h;
}

std::vector<uint8_t> WriteStream(StreamHeader header,
                                 std::span<const uint8_t> sideinfo,
                                 std::span<const uint8_t> payload) {
  if (sideinfo.size() > 0xFFFFFFFFu) {
    throw Error(ErrorCode::kDimensionOverflow, "side information too large");
  }
  header.sideinfo_len = static_cast<uint32_t>(sideinfo.size());
  const auto h = header.Serialize();
  std::vector<uint8_t> out(h.size() + sideinfo.size() + payload.size());
  auto it = std::copy(h.begin(), h.end(), out.begin());
  it = std::copy(sideinfo.begin(), sideinfo.end(), it);
  std::copy(payload.begin(), payload.end(), it);
  return out;
}

ScalableBitstream ReadStream(std::span<const uint8_t> bytes) {
  ScalableBitstream s;
  s.header = StreamHeader::Parse(bytes);
  const size_t min_len = kHeaderSize + size_t{s.header.sideinfo_len};
  if (bytes.size() < min_len) {
    throw Error(ErrorCode::kBelowMinimumLength,
                "stream prefix ends inside the side information");
  }
  s.sideinfo.assign(bytes.begin() + kHeaderSize, bytes.begin() + min_len);
  s.payload.assign(bytes.begin() + min_len, bytes.end());
  return s;
}

std::vector<uint8_t> TruncateStream(std::span<const uint8_t> bytes,
                                    size_t target_bytes) {
  const StreamHeader h = StreamHeader::Parse(bytes);
  const size_t min_len = kHeaderSize + size_t{h.sideinfo_len};
  if (target_bytes < min_len || bytes.size() < min_len) {
    throw Error(ErrorCode::kBelowMinimumLength,
                "cannot truncate below header and side information (" +
                    std::to_string(min_len) + " bytes)");
  }
  const size_t n = std::min(target_bytes, bytes.size());
  return std::vector<uint8_t>(bytes.begin(), bytes.begin() + n);
}

}  // namespace dpts
