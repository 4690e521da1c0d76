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

// Core value types shared by every boundex module: inputs, outputs and the
// byte blobs distances are computed over.

#ifndef BOUNDEX_TYPES_H_
#define BOUNDEX_TYPES_H_

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boundex {

using ByteBlob = std::string;

// Separator byte used by every serialization in this library.
inline constexpr char kFieldSeparator = '\x1f';

// Thrown when a caller violates an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an external worker speaks the JSONL protocol incorrectly.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One input of the software under test: named signed 64-bit coordinates.
class InputPoint {
 public:
  InputPoint() = default;
  // Throws PreconditionError unless dims and coords are non-empty and equally
  // long.
  InputPoint(std::vector<std::string> dims, std::vector<int64_t> coords);
  InputPoint(std::shared_ptr<const std::vector<std::string>> dims,
             std::vector<int64_t> coords);

  const std::vector<std::string>& dims() const;
  const std::vector<int64_t>& coords() const { return coords_; }
  size_t size() const { return coords_.size(); }
  int64_t operator[](size_t i) const { return coords_[i]; }

  // Index of `dim`, or size() if absent.
  size_t IndexOf(std::string_view dim) const;

  InputPoint WithCoord(size_t i, int64_t value) const;
  // Same dimension names, new coordinates (sizes must match).
  InputPoint WithCoords(std::vector<int64_t> coords) const;

  // Decimal coordinates joined by kFieldSeparator.
  ByteBlob Serialize() const;
  // "(c0,c1,...)", for messages.
  std::string ToString() const;

  // Equality is coordinate-wise.
  friend bool operator==(const InputPoint& a, const InputPoint& b) {
    return a.coords_ == b.coords_;
  }
  friend auto operator<=>(const InputPoint& a, const InputPoint& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  // Shared: every point produced by stepping or sweeping has the same names.
  std::shared_ptr<const std::vector<std::string>> dims_;
  std::vector<int64_t> coords_;
};

enum class Status { kOk, kError };

std::string_view StatusName(Status status);  // "ok" | "error"
Status ParseStatus(std::string_view name);   // throws std::invalid_argument

struct SutOutput {
  Status status = Status::kOk;
  std::string text;

  static SutOutput Ok(std::string text) { return {Status::kOk, std::move(text)}; }
  static SutOutput Error(std::string text) {
    return {Status::kError, std::move(text)};
  }

  bool ok() const { return status == Status::kOk; }

  // 'O' or 'E', kFieldSeparator, then the canonical text. An ok output and an
  // error output with equal text serialize differently.
  ByteBlob Serialize() const;

  friend bool operator==(const SutOutput&, const SutOutput&) = default;
};

}  // namespace boundex

#endif  // BOUNDEX_TYPES_H_
