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

// JSON forms of the exported artifacts. Field order is fixed and reals are
// rounded to 9 significant digits, so equal values always serialize to equal
// bytes. Parsers throw std::invalid_argument on schema violations.

#ifndef BOUNDEX_JSON_IO_H_
#define BOUNDEX_JSON_IO_H_

#include <string>
#include <vector>

#include "boundex/detect.h"
#include "boundex/explore.h"
#include "json.hpp"

namespace boundex {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json ToJson(const InputPoint& point);
Json ToJson(const SutOutput& output);
Json ToJson(const Region& region);
Json ToJson(const Wall& wall);
Json ToJson(const SearchResult& result);
Json ToJson(const ScanTrace& trace);
// {"region", "sut", "distance", "codec", "cells", "max_d", "walls"}.
Json ToJson(const GridResult& grid);

InputPoint InputPointFromJson(const Json& json,
                              const std::vector<std::string>& dims);
SutOutput SutOutputFromJson(const Json& json);
// {"sweep": [{"name", "lo", "hi", "stride"?}, ...], "fix": {name: value}?}
Region RegionFromJson(const Json& json);
// Dimension names come from the region: swept then fixed, in order, unless
// `dims` is given.
GridResult GridResultFromJson(const Json& json,
                              const std::vector<std::string>& dims = {});
SearchResult SearchResultFromJson(const Json& json,
                                  const std::vector<std::string>& dims);
ScanTrace ScanTraceFromJson(const Json& json, const std::vector<std::string>& dims);

}  // namespace boundex

#endif  // BOUNDEX_JSON_IO_H_
