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

#ifndef BOUNDEX_FORMAT_H_
#define BOUNDEX_FORMAT_H_

#include <string>

namespace boundex {

// Exported reals carry 9 significant digits.
inline constexpr int kRealDigits = 9;

// "%.9g".
std::string FormatReal(double value);

// The double nearest to FormatReal(value). Shortest-round-trip printers
// (the JSON writer) then emit at most 9 significant digits.
double RoundReal(double value);

}  // namespace boundex

#endif  // BOUNDEX_FORMAT_H_
