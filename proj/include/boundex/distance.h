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

// Distance functions over serialized inputs and outputs, and the program
// derivative d_out(o1, o2) / d_in(x1, x2) used to score boundariness.
//
// Compression-based distances depend on the codec, so every codec carries an
// identifier (e.g. "bzip2:9") that exporters record next to the values.
// All functions here are pure; compressor state is allocated per call.

#ifndef BOUNDEX_DISTANCE_H_
#define BOUNDEX_DISTANCE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>

#include "boundex/types.h"

namespace boundex {

enum class CodecKind { kBzip2, kZlib };

struct Codec {
  CodecKind kind = CodecKind::kBzip2;
  int level = 9;

  // "bzip2:9", "zlib:6", ...
  std::string Id() const;
  // Accepts "bzip2", "bzip2:<1-9>", "zlib", "zlib:<0-9>".
  static Codec Parse(std::string_view id);

  friend bool operator==(const Codec&, const Codec&) = default;
};

inline Codec DefaultCodec() { return Codec{CodecKind::kBzip2, 9}; }

// Size in bytes of `blob` compressed with `codec`. Always positive: both
// codecs emit headers even for empty input. Throws std::runtime_error if the
// compressor fails.
size_t CompressedSize(std::string_view blob, const Codec& codec = DefaultCodec());

// Normalized compression distance
//   (C(ab) - min(C(a), C(b))) / max(C(a), C(b)).
// The raw ratio is returned, not clamped to [0, 1].
double Ncd(std::string_view a, std::string_view b,
           const Codec& codec = DefaultCodec());

// Same formula with the single-blob sizes supplied by the caller, so repeated
// blobs are compressed once.
double NcdFromSizes(size_t size_a, size_t size_b, size_t size_ab);

// |a - b| with no overflow: the difference is taken in unsigned 64-bit space.
uint64_t AbsoluteDifference(int64_t a, int64_t b);
double AbsoluteNumericDistance(int64_t a, int64_t b);

// Levenshtein distance over bytes.
size_t EditDistance(std::string_view a, std::string_view b);

enum class DistanceKind {
  kNcd,
  kAbsoluteNumeric,
  kEdit,
  // 0 for equal values, 1 otherwise. Consecutive stepper points are one step
  // apart, so this is the input distance for stepper-generated pairs.
  kDiscrete,
};

// A named, deterministic distance. Inputs are compared via their
// serialization except for kAbsoluteNumeric, which is the L1 distance of the
// coordinates. For outputs, kAbsoluteNumeric needs both texts to parse as
// integers.
class DistanceFunction {
 public:
  DistanceFunction() = default;
  DistanceFunction(DistanceKind kind, Codec codec = DefaultCodec())
      : kind_(kind), codec_(codec) {}

  // "ncd", "ncd:zlib:9", "edit", "absolute", "discrete". Throws
  // std::invalid_argument on unknown names.
  static DistanceFunction Parse(std::string_view spec);

  DistanceKind kind() const { return kind_; }
  const Codec& codec() const { return codec_; }
  // "ncd", "edit", "absolute" or "discrete".
  std::string Name() const;

  double Between(std::string_view a, std::string_view b) const;
  double Between(const InputPoint& a, const InputPoint& b) const;
  double Between(const SutOutput& a, const SutOutput& b) const;

 private:
  DistanceKind kind_ = DistanceKind::kNcd;
  Codec codec_ = DefaultCodec();
};

// Wraps a DistanceFunction and remembers compressed sizes of blobs it has
// seen, so an output shared by several pairs is compressed once. Values are
// identical to the wrapped function's. Not thread-safe: one per run or thread.
class MemoizedDistance {
 public:
  explicit MemoizedDistance(DistanceFunction function, size_t capacity = 1 << 14)
      : function_(std::move(function)), capacity_(capacity) {}

  const DistanceFunction& function() const { return function_; }
  double Between(const SutOutput& a, const SutOutput& b);

 private:
  size_t SizeOf(const std::string& blob);

  DistanceFunction function_;
  size_t capacity_;
  std::unordered_map<std::string, size_t> sizes_;
};

struct DerivativeSample {
  InputPoint x1, x2;
  SutOutput o1, o2;
  double d_in = 0;
  double d_out = 0;
  double derivative = 0;
};

// d_out / d_in. Throws PreconditionError when d_in is zero.
double Derivative(double d_in, double d_out);

DerivativeSample ProgramDerivative(const InputPoint& x1, const InputPoint& x2,
                                   const SutOutput& o1, const SutOutput& o2,
                                   const DistanceFunction& d_in,
                                   const DistanceFunction& d_out);

}  // namespace boundex

#endif  // BOUNDEX_DISTANCE_H_
