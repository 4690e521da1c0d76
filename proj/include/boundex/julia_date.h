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

// Re-implementation of Julia 1.1.1 `Dates.Date(y, m, d)` construction.
//
// Julia validates the month and day fields, converts the triple to a rata die
// day count and renders dates by converting the count back. Both conversions
// use plain Int64 arithmetic, which silently wraps for very large years; that
// wrap is what makes the type accept inputs far beyond typemax(Date) and
// print them as garbage. Every add and multiply below wraps in two's
// complement and every division is floor division (`fld`) unless noted.

#ifndef BOUNDEX_JULIA_DATE_H_
#define BOUNDEX_JULIA_DATE_H_

#include <cstdint>
#include <optional>
#include <string>

#include "boundex/types.h"

namespace boundex::julia_date {

struct Ymd {
  int64_t year = 0;
  int64_t month = 0;
  int64_t day = 0;
  friend bool operator==(const Ymd&, const Ymd&) = default;
};

// typemax(Date) / typemin(Date) as reported by Julia 1.1.1.
inline constexpr Ymd kTypeMax{252522163911149, 12, 31};
inline constexpr Ymd kTypeMin{-252522163911150, 1, 1};

bool IsLeapYear(int64_t year);

// 28..31. Throws PreconditionError unless 1 <= month <= 12.
int64_t DaysInMonth(int64_t year, int64_t month);

// Rata die day count (0001-01-01 is day 1). Wraps silently on overflow.
// Throws PreconditionError unless 1 <= month <= 12.
int64_t TotalDays(int64_t year, int64_t month, int64_t day);

// Inverse of TotalDays inside years 1..9999. Far outside, the wrapped
// arithmetic yields out-of-range month and day fields.
Ymd RataToYmd(int64_t days);

// "<year>-<mm>-<dd>": month and day are a sign (when negative) followed by
// the absolute value zero-padded to two digits.
std::string RenderDate(const Ymd& date);

// Date(y, m, d): month is validated before day; the ok text is the rendering
// of the round-tripped day count, which differs from the input in overflow
// regions.
SutOutput Construct(const Ymd& date);

enum class Direction { kNext, kPrevious };

// The day after (or before) `date` in the proleptic Gregorian calendar,
// computed on the fields. Returns nullopt if the year would leave int64.
// Throws PreconditionError for an invalid month or day.
std::optional<Ymd> Step(const Ymd& date, Direction direction);

}  // namespace boundex::julia_date

#endif  // BOUNDEX_JULIA_DATE_H_
