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

#include "boundex/types.h"

#include <algorithm>

namespace boundex {

InputPoint::InputPoint(std::vector<std::string> dims,
                       std::vector<int64_t> coords)
    : InputPoint(std::make_shared<const std::vector<std::string>>(std::move(dims)),
                 std::move(coords)) {}

InputPoint::InputPoint(std::shared_ptr<const std::vector<std::string>> dims,
                       std::vector<int64_t> coords)
    : dims_(std::move(dims)), coords_(std::move(coords)) {
  if (!dims_ || coords_.empty() || coords_.size() != dims_->size()) {
    throw PreconditionError("InputPoint needs equally many (>0) dims and coords");
  }
}

const std::vector<std::string>& InputPoint::dims() const {
  static const std::vector<std::string> kNone;
  return dims_ ? *dims_ : kNone;
}

size_t InputPoint::IndexOf(std::string_view dim) const {
  const auto& names = dims();
  auto it = std::find(names.begin(), names.end(), dim);
  return static_cast<size_t>(it - names.begin());
}

InputPoint InputPoint::WithCoord(size_t i, int64_t value) const {
  InputPoint copy = *this;
  copy.coords_.at(i) = value;
  return copy;
}

InputPoint InputPoint::WithCoords(std::vector<int64_t> coords) const {
  return InputPoint(dims_, std::move(coords));
}

ByteBlob InputPoint::Serialize() const {
  ByteBlob out;
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out.push_back(kFieldSeparator);
    out += std::to_string(coords_[i]);
  }
  return out;
}

std::string InputPoint::ToString() const {
  std::string out = "(";
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(coords_[i]);
  }
  return out + ")";
}

std::string_view StatusName(Status status) {
  return status == Status::kOk ? "ok" : "error";
}

Status ParseStatus(std::string_view name) {
  if (name == "ok") return Status::kOk;
  if (name == "error") return Status::kError;
  throw std::invalid_argument("unknown status: " + std::string(name));
}

ByteBlob SutOutput::Serialize() const {
  ByteBlob out;
  out.reserve(text.size() + 2);
  out.push_back(ok() ? 'O' : 'E');
  out.push_back(kFieldSeparator);
  out += text;
  return out;
}

}  // namespace boundex
