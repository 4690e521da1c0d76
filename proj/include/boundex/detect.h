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

// Boundary detection along a stepper walk.
//
// Starting at an entrance pair, BdSearch walks pairs (p1, p2), (p2, next(p2)),
// ... and stops at the first pair whose output distance is an outlier with
// respect to all distances collected so far. Scan walks a fixed number of
// pairs and records every sample, with no stopping rule.

#ifndef BOUNDEX_DETECT_H_
#define BOUNDEX_DETECT_H_

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "boundex/distance.h"
#include "boundex/sut.h"

namespace boundex {

struct OutlierRule {
  double k = 3.0;
  size_t warmup = 30;  // pairs collected before any outlier test
  double epsilon = 1e-9;

  // Throws PreconditionError unless k > 0, warmup >= 2 and epsilon > 0.
  void Validate() const;
};

// value > mean + k * stddev, or value > mean + epsilon when stddev == 0.
bool IsOutlier(double value, double mean, double stddev, const OutlierRule& rule);

// Welford accumulation; stddev() is the population standard deviation.
class RunningStats {
 public:
  void Add(double value);
  size_t count() const { return count_; }
  double mean() const { return mean_; }
  double stddev() const;

 private:
  size_t count_ = 0;
  double mean_ = 0;
  double m2_ = 0;
};

inline constexpr size_t kDefaultMaxSteps = 1'000'000;

// Statistics at termination. steps_taken counts examined pairs; the entrance
// pair is step 1.
struct SearchStats {
  size_t steps_taken = 0;
  double mean = 0;
  double stddev = 0;
  size_t sut_evaluations = 0;
};

struct BoundaryCandidate {
  std::pair<InputPoint, InputPoint> pair;
  std::pair<SutOutput, SutOutput> outputs;
  double distance = 0;
  SearchStats stats;  // mean/stddev of the distances before this pair
};

struct Exhausted {
  SearchStats stats;
};

struct RangeEnd {
  SearchStats stats;
  InputPoint last;  // the point the stepper could not advance from
  std::string reason;
};

using SearchResult = std::variant<BoundaryCandidate, Exhausted, RangeEnd>;

const SearchStats& StatsOf(const SearchResult& result);

// Throws PreconditionError if the rule is invalid, max_steps < warmup or the
// entrance is not a stepper pair. Exceptions from the SUT propagate.
SearchResult BdSearch(const Sut& sut, const Stepper& stepper, Direction direction,
                      const DistanceFunction& d_out, const Entrance& entrance,
                      const OutlierRule& rule = {},
                      size_t max_steps = kDefaultMaxSteps);

struct ScanSample {
  size_t step = 0;
  InputPoint x1, x2;
  SutOutput o1, o2;
  double d_in = 0;
  double d_out = 0;
  double derivative = 0;
};

struct ScanTrace {
  std::string sut_id;
  std::string d_out_id;
  std::string d_in_id;
  std::string codec_id;
  std::vector<ScanSample> samples;
  bool truncated = false;  // the stepper left its range before n_steps
  std::string reason;
};

// Exactly n_steps samples unless truncated. d_in defaults to the discrete
// distance: consecutive stepper points are one step apart.
ScanTrace Scan(const Sut& sut, const Stepper& stepper, Direction direction,
               const DistanceFunction& d_out, const Entrance& entrance,
               size_t n_steps,
               const DistanceFunction& d_in = DistanceFunction(DistanceKind::kDiscrete));

// Columns: step,x1,x2,o1_status,o1_text_hash,o2_status,o2_text_hash,d_out,
// derivative. Points are rendered as ';'-joined coordinates, text hashes as
// 16 hex digits of 64-bit FNV-1a, reals with 9 significant digits.
std::string ScanTraceToCsv(const ScanTrace& trace);

uint64_t Fnv1a64(std::string_view text);

}  // namespace boundex

#endif  // BOUNDEX_DETECT_H_
