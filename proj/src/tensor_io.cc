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


#include "dpts/tensor_io.h"

#include <fstream>
#include <iterator>

#include "byte_io.h"

namespace dpts {

size_t TensorFile::element_count() const {
  size_t n = 1;
  for (uint16_t d : dims) n *= d;
  return n;
}

std::vector<uint8_t> SerializeTensor(const TensorFile& t) {
  if (t.dims.size() > 0xFF) {
    throw Error(ErrorCode::kDimensionOverflow, "tensor rank above 255");
  }
  if (t.element_count() != t.data.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "tensor payload does not match its dims");
  }
  std::vector<uint8_t> out = {'D', 'P', 'T', 'F', kDtypeFloat32,
                              static_cast<uint8_t>(t.dims.size())};
  out.reserve(out.size() + 2 * t.dims.size() + 4 * t.data.size());
  for (uint16_t d : t.dims) PutLE<uint16_t>(&out, d);
  for (float f : t.data) PutLE<uint32_t>(&out, FloatBits(f));
  return out;
}

TensorFile ParseTensor(std::span<const uint8_t> bytes) {
  if (bytes.size() < 6 || bytes[0] != 'D' || bytes[1] != 'P' ||
      bytes[2] != 'T' || bytes[3] != 'F') {
    throw Error(ErrorCode::kCorruptHeader, "not a DPTF tensor file");
  }
  if (bytes[4] != kDtypeFloat32) {
    throw Error(ErrorCode::kCorruptHeader, "unsupported tensor dtype");
  }
  const size_t rank = bytes[5];
  size_t pos = 6;
  if (bytes.size() < pos + 2 * rank) {
    throw Error(ErrorCode::kCorruptHeader, "truncated tensor dims");
  }
  TensorFile t;
  t.dims.resize(rank);
  for (size_t i = 0; i < rank; ++i, pos += 2) {
    t.dims[i] = LoadLE<uint16_t>(&bytes[pos]);
  }
  const size_t n = t.element_count();
  if (bytes.size() != pos + 4 * n) {
    throw Error(ErrorCode::kCorruptHeader,
                "tensor payload length does not match its dims");
  }
  t.data.resize(n);
  for (size_t i = 0; i < n; ++i, pos += 4) {
    t.data[i] = BitsToFloat(LoadLE<uint32_t>(&bytes[pos]));
  }
  return t;
}

std::vector<uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path);
  return bytes;
}

void WriteFileBytes(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

TensorFile ReadTensorFile(const std::string& path) {
  return ParseTensor(ReadFileBytes(path));
}

void WriteTensorFile(const std::string& path, const TensorFile& t) {
  WriteFileBytes(path, SerializeTensor(t));
}

namespace {

std::vector<uint16_t> Dims16(std::initializer_list<size_t> dims) {
  std::vector<uint16_t> out;
  for (size_t d : dims) {
    if (d > 0xFFFF) {
      throw Error(ErrorCode::kDimensionOverflow,
                  "tensor dimension above 65535");
    }
    out.push_back(static_cast<uint16_t>(d));
  }
  return out;
}

}  // namespace

TensorFile ToTensorFile(const LatentTensor& t) {
  TensorFile f;
  f.dims = Dims16({t.shape.channels, t.shape.height, t.shape.width});
  f.data.assign(t.values.begin(), t.values.end());
  return f;
}

TensorFile ToTensorFile(const GaussianModel& m) {
  TensorFile f;
  f.dims = Dims16({2, m.shape.channels, m.shape.height, m.shape.width});
  f.data.reserve(2 * m.size());
  f.data.insert(f.data.end(), m.mean.begin(), m.mean.end());
  f.data.insert(f.data.end(), m.sigma.begin(), m.sigma.end());
  return f;
}

LatentTensor LatentFromTensorFile(const TensorFile& t) {
  if (t.dims.size() != 3) {
    throw Error(ErrorCode::kShapeMismatch, "latent tensors have rank 3");
  }
  LatentTensor out(Shape{t.dims[0], t.dims[1], t.dims[2]});
  for (size_t i = 0; i < t.data.size(); ++i) out.values[i] = t.data[i];
  return out;
}

GaussianModel ModelFromTensorFile(const TensorFile& t) {
  if (t.dims.size() != 4 || t.dims[0] != 2) {
    throw Error(ErrorCode::kShapeMismatch,
                "model tensors have shape (2, C, H, W)");
  }
  GaussianModel m;
  m.shape = Shape{t.dims[1], t.dims[2], t.dims[3]};
  const size_t n = m.shape.size();
  m.mean.assign(t.data.begin(), t.data.begin() + n);
  m.sigma.assign(t.data.begin() + n, t.data.end());
  m.Validate();
  return m;
}

}  // namespace dpts
