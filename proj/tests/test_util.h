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

// Helpers shared by the test binaries. The generators here are deliberately
// simple so the Python scripts that produced the golden constants can
// reproduce the exact same byte streams.

#ifndef BOUNDEX_TESTS_TEST_UTIL_H_
#define BOUNDEX_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <string>

namespace boundex::testing {

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // Uniform in [lo, hi]; the modulo bias is irrelevant at test sizes.
  int64_t Uniform(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(Next() % static_cast<uint64_t>(hi - lo + 1));
  }

 private:
  uint64_t state_;
};

// Low byte of each SplitMix64 output.
inline std::string RandomBlob(uint64_t seed, size_t n) {
  SplitMix64 rng(seed);
  std::string blob(n, '\0');
  for (auto& c : blob) c = static_cast<char>(rng.Next() & 0xff);
  return blob;
}

// Days since 1970-01-01 of a proleptic Gregorian date, after H. Hinnant's
// chrono-compatible low-level date algorithms. Shares no code with the
// Julia port and uses a different epoch and month rotation.
inline int64_t DaysFromCivil(int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

// 0001-01-01 is day 1 of the Julia count and day -719162 of the Unix one.
inline int64_t CivilRataDie(int64_t y, unsigned m, unsigned d) {
  return DaysFromCivil(y, m, d) + 719163;
}

inline unsigned CivilDaysInMonth(int64_t y, unsigned m) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  bool leap = y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
  return m == 2 && leap ? 29 : kDays[m - 1];
}

}  // namespace boundex::testing

#endif  // BOUNDEX_TESTS_TEST_UTIL_H_
