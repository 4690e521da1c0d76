// Copyright 2026 The Boundex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "boundex/distance.h"

#include <bzlib.h>
#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace boundex {
namespace {

size_t Bzip2Size(std::string_view blob, int level) {
  // Worst case documented by libbz2: 1% + 600 bytes.
  unsigned capacity = static_cast<unsigned>(blob.size() + blob.size() / 100 + 600);
  std::vector<char> out(capacity);
  unsigned out_len = capacity;
  int rc = BZ2_bzBuffToBuffCompress(out.data(), &out_len,
                                    const_cast<char*>(blob.data()),
                                    static_cast<unsigned>(blob.size()), level,
                                    /*verbosity=*/0, /*workFactor=*/30);
  if (rc != BZ_OK) {
    throw std::runtime_error("bzip2 compression failed with code " +
                             std::to_string(rc));
  }
  return out_len;
}

size_t ZlibSize(std::string_view blob, int level) {
  uLongf out_len = compressBound(static_cast<uLong>(blob.size()));
  std::vector<Bytef> out(out_len);
  int rc = compress2(out.data(), &out_len,
                     reinterpret_cast<const Bytef*>(blob.data()),
                     static_cast<uLong>(blob.size()), level);
  if (rc != Z_OK) {
    throw std::runtime_error("zlib compression failed with code " +
                             std::to_string(rc));
  }
  return out_len;
}

bool ParseInt64(std::string_view text, int64_t& value) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

}  // namespace

std::string Codec::Id() const {
  return std::string(kind == CodecKind::kBzip2 ? "bzip2" : "zlib") + ":" +
         std::to_string(level);
}

Codec Codec::Parse(std::string_view id) {
  Codec codec;
  std::string_view name = id;
  std::string_view level;
  if (auto colon = id.find(':'); colon != std::string_view::npos) {
    name = id.substr(0, colon);
    level = id.substr(colon + 1);
  }
  if (name == "bzip2") {
    codec = {CodecKind::kBzip2, 9};
  } else if (name == "zlib") {
    codec = {CodecKind::kZlib, 9};
  } else {
    throw std::invalid_argument("unknown codec: " + std::string(id));
  }
  if (!level.empty()) {
    int64_t parsed = 0;
    int lo = codec.kind == CodecKind::kBzip2 ? 1 : 0;
    if (!ParseInt64(level, parsed) || parsed < lo || parsed > 9) {
      throw std::invalid_argument("bad codec level: " + std::string(id));
    }
    codec.level = static_cast<int>(parsed);
  }
  return codec;
}

size_t CompressedSize(std::string_view blob, const Codec& codec) {
  return codec.kind == CodecKind::kBzip2 ? Bzip2Size(blob, codec.level)
                                         : ZlibSize(blob, codec.level);
}

double NcdFromSizes(size_t size_a, size_t size_b, size_t size_ab) {
  size_t hi = std::max(size_a, size_b);
  size_t lo = std::min(size_a, size_b);
  if (hi == 0) return 0.0;
  return (static_cast<double>(size_ab) - static_cast<double>(lo)) /
         static_cast<double>(hi);
}

double Ncd(std::string_view a, std::string_view b, const Codec& codec) {
  std::string ab;
  ab.reserve(a.size() + b.size());
  ab.append(a).append(b);
  return NcdFromSizes(CompressedSize(a, codec), CompressedSize(b, codec),
                      CompressedSize(ab, codec));
}

uint64_t AbsoluteDifference(int64_t a, int64_t b) {
  auto ua = static_cast<uint64_t>(a);
  auto ub = static_cast<uint64_t>(b);
  return a >= b ? ua - ub : ub - ua;
}

double AbsoluteNumericDistance(int64_t a, int64_t b) {
  return static_cast<double>(AbsoluteDifference(a, b));
}

size_t EditDistance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), size_t{0});
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diagonal = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t above = row[j];
      size_t substitute = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diagonal = above;
    }
  }
  return row[b.size()];
}

DistanceFunction DistanceFunction::Parse(std::string_view spec) {
  if (spec == "edit") return DistanceFunction(DistanceKind::kEdit);
  if (spec == "absolute") return DistanceFunction(DistanceKind::kAbsoluteNumeric);
  if (spec == "discrete") return DistanceFunction(DistanceKind::kDiscrete);
  if (spec == "ncd") return DistanceFunction(DistanceKind::kNcd);
  if (spec.starts_with("ncd:")) {
    return DistanceFunction(DistanceKind::kNcd, Codec::Parse(spec.substr(4)));
  }
  throw std::invalid_argument("unknown distance: " + std::string(spec));
}

std::string DistanceFunction::Name() const {
  switch (kind_) {
    case DistanceKind::kNcd: return "ncd";
    case DistanceKind::kAbsoluteNumeric: return "absolute";
    case DistanceKind::kEdit: return "edit";
    case DistanceKind::kDiscrete: return "discrete";
  }
  return "?";
}

double DistanceFunction::Between(std::string_view a, std::string_view b) const {
  switch (kind_) {
    case DistanceKind::kNcd:
      return Ncd(a, b, codec_);
    case DistanceKind::kEdit:
      return static_cast<double>(EditDistance(a, b));
    case DistanceKind::kDiscrete:
      return a == b ? 0.0 : 1.0;
    case DistanceKind::kAbsoluteNumeric: {
      int64_t x = 0, y = 0;
      if (!ParseInt64(a, x) || !ParseInt64(b, y)) {
        throw std::invalid_argument(
            "absolute distance needs integer-valued operands");
      }
      return AbsoluteNumericDistance(x, y);
    }
  }
  return 0.0;
}

double DistanceFunction::Between(const InputPoint& a, const InputPoint& b) const {
  if (kind_ != DistanceKind::kAbsoluteNumeric) {
    return Between(a.Serialize(), b.Serialize());
  }
  if (a.size() != b.size()) {
    throw PreconditionError("inputs of different dimensionality");
  }
  double sum = 0;
  for (size_t i = 0; i < a.size(); ++i) sum += AbsoluteNumericDistance(a[i], b[i]);
  return sum;
}

double DistanceFunction::Between(const SutOutput& a, const SutOutput& b) const {
  if (kind_ == DistanceKind::kAbsoluteNumeric) return Between(a.text, b.text);
  return Between(a.Serialize(), b.Serialize());
}

size_t MemoizedDistance::SizeOf(const std::string& blob) {
  if (auto it = sizes_.find(blob); it != sizes_.end()) return it->second;
  if (sizes_.size() >= capacity_) sizes_.clear();
  size_t size = CompressedSize(blob, function_.codec());
  sizes_.emplace(blob, size);
  return size;
}

double MemoizedDistance::Between(const SutOutput& a, const SutOutput& b) {
  if (function_.kind() != DistanceKind::kNcd) return function_.Between(a, b);
  std::string blob_a = a.Serialize();
  std::string blob_b = b.Serialize();
  size_t size_a = SizeOf(blob_a);
  size_t size_b = SizeOf(blob_b);
  return NcdFromSizes(size_a, size_b, SizeOf(blob_a + blob_b));
}

double Derivative(double d_in, double d_out) {
  if (!(d_in > 0)) {
    throw PreconditionError("derivative undefined at zero input distance");
  }
  return d_out / d_in;
}

DerivativeSample ProgramDerivative(const InputPoint& x1, const InputPoint& x2,
                                   const SutOutput& o1, const SutOutput& o2,
                                   const DistanceFunction& d_in,
                                   const DistanceFunction& d_out) {
  DerivativeSample sample{x1, x2, o1, o2, d_in.Between(x1, x2), 0, 0};
  if (!(sample.d_in > 0)) {
    throw PreconditionError("derivative undefined at zero input distance");
  }
  sample.d_out = d_out.Between(o1, o2);
  sample.derivative = Derivative(sample.d_in, sample.d_out);
  return sample;
}

}  // namespace boundex
