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

#include "boundex/julia_date.h"

#include <array>
#include <limits>

namespace boundex::julia_date {
namespace {

// Wrapping Int64 arithmetic, as Julia does it.
int64_t Add(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b));
}
int64_t Sub(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) - static_cast<uint64_t>(b));
}
int64_t Mul(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b));
}

// fld for a positive divisor.
int64_t FloorDiv(int64_t a, int64_t b) {
  int64_t q = a / b;
  return (a % b != 0 && a < 0) ? q - 1 : q;
}

// Cumulative days before each month when the year starts on March 1.
constexpr std::array<int64_t, 12> kShiftedMonthDays = {
    306, 337, 0, 31, 61, 92, 122, 153, 184, 214, 245, 275};

void CheckMonth(int64_t month) {
  if (month < 1 || month > 12) {
    throw PreconditionError("month " + std::to_string(month) +
                            " outside 1..12");
  }
}

std::string PadField(int64_t value) {
  uint64_t magnitude = value < 0 ? 0 - static_cast<uint64_t>(value)
                                 : static_cast<uint64_t>(value);
  std::string digits = std::to_string(magnitude);
  if (digits.size() < 2) digits.insert(0, 2 - digits.size(), '0');
  return value < 0 ? "-" + digits : digits;
}

}  // namespace

bool IsLeapYear(int64_t year) {
  // Remainder-zero tests agree for floored and truncated modulo.
  return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

int64_t DaysInMonth(int64_t year, int64_t month) {
  CheckMonth(month);
  switch (month) {
    case 2:
      return IsLeapYear(year) ? 29 : 28;
    case 4:
    case 6:
    case 9:
    case 11:
      return 30;
    default:
      return 31;
  }
}

int64_t TotalDays(int64_t year, int64_t month, int64_t day) {
  CheckMonth(month);
  int64_t z = month < 3 ? Sub(year, 1) : year;
  int64_t days = Add(day, kShiftedMonthDays[month - 1]);
  days = Add(days, Mul(365, z));
  days = Add(days, FloorDiv(z, 4));
  days = Sub(days, FloorDiv(z, 100));
  days = Add(days, FloorDiv(z, 400));
  return Sub(days, 306);
}

Ymd RataToYmd(int64_t days) {
  int64_t z = Add(days, 306);
  int64_t h = Sub(Mul(100, z), 25);
  int64_t a = FloorDiv(h, 3652425);
  int64_t b = Sub(a, FloorDiv(a, 4));
  int64_t y = FloorDiv(Add(Mul(100, b), h), 36525);
  int64_t c = Sub(Sub(Add(b, z), Mul(365, y)), FloorDiv(y, 4));
  // Julia uses truncating div for the month and day steps.
  int64_t m = Add(Mul(5, c), 456) / 153;
  int64_t d = Sub(c, Sub(Mul(153, m), 457) / 5);
  if (m > 12) return {Add(y, 1), Sub(m, 12), d};
  return {y, m, d};
}

std::string RenderDate(const Ymd& date) {
  return std::to_string(date.year) + "-" + PadField(date.month) + "-" +
         PadField(date.day);
}

SutOutput Construct(const Ymd& date) {
  if (date.month < 1 || date.month > 12) {
    return SutOutput::Error("Month: " + std::to_string(date.month) +
                            " out of range (1:12)");
  }
  int64_t days_in_month = DaysInMonth(date.year, date.month);
  if (date.day < 1 || date.day > days_in_month) {
    return SutOutput::Error("Day: " + std::to_string(date.day) +
                            " out of range (1:" +
                            std::to_string(days_in_month) + ")");
  }
  return SutOutput::Ok(
      RenderDate(RataToYmd(TotalDays(date.year, date.month, date.day))));
}

std::optional<Ymd> Step(const Ymd& date, Direction direction) {
  int64_t days_in_month = DaysInMonth(date.year, date.month);
  if (date.day < 1 || date.day > days_in_month) {
    throw PreconditionError("day " + std::to_string(date.day) +
                            " outside the month");
  }
  constexpr int64_t kMax = std::numeric_limits<int64_t>::max();
  constexpr int64_t kMin = std::numeric_limits<int64_t>::min();
  if (direction == Direction::kNext) {
    if (date.day < days_in_month) return Ymd{date.year, date.month, date.day + 1};
    if (date.month < 12) return Ymd{date.year, date.month + 1, 1};
    if (date.year == kMax) return std::nullopt;
    return Ymd{date.year + 1, 1, 1};
  }
  if (date.day > 1) return Ymd{date.year, date.month, date.day - 1};
  if (date.month > 1) {
    return Ymd{date.year, date.month - 1, DaysInMonth(date.year, date.month - 1)};
  }
  if (date.year == kMin) return std::nullopt;
  return Ymd{date.year - 1, 12, 31};
}

}  // namespace boundex::julia_date
