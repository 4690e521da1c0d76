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

#include "boundex/format.h"

#include <cstdio>
#include <cstdlib>

namespace boundex {

std::string FormatReal(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.*g", kRealDigits, value);
  return buffer;
}

double RoundReal(double value) {
  return std::strtod(FormatReal(value).c_str(), nullptr);
}

}  // namespace boundex
