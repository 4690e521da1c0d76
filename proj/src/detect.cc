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

#include "boundex/detect.h"

#include <cmath>
#include <cstdio>
#include <optional>

#include "boundex/format.h"

namespace boundex {
namespace {

// Evaluates a chain of points, remembering the most recent one: along a walk
// the second point of each pair is the first point of the next.
class ChainEvaluator {
 public:
  explicit ChainEvaluator(const Sut& sut) : sut_(sut) {}

  const SutOutput& Evaluate(const InputPoint& x) {
    for (auto& slot : slots_) {
      if (slot && slot->first == x) return slot->second;
    }
    ++evaluations_;
    auto& slot = slots_[next_slot_];
    next_slot_ ^= 1;
    slot.emplace(x, sut_.Evaluate(x));
    return slot->second;
  }

  size_t evaluations() const { return evaluations_; }

 private:
  const Sut& sut_;
  std::optional<std::pair<InputPoint, SutOutput>> slots_[2];
  int next_slot_ = 0;
  size_t evaluations_ = 0;
};

SearchStats MakeStats(size_t steps, const RunningStats& stats,
                      const ChainEvaluator& evaluator) {
  return {steps, stats.mean(), stats.stddev(), evaluator.evaluations()};
}

std::string JoinCoords(const InputPoint& x) {
  std::string out;
  for (size_t i = 0; i < x.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(x[i]);
  }
  return out;
}

}  // namespace

void OutlierRule::Validate() const {
  if (!(k > 0)) throw PreconditionError("outlier rule needs k > 0");
  if (warmup < 2) throw PreconditionError("outlier rule needs warmup >= 2");
  if (!(epsilon > 0)) throw PreconditionError("outlier rule needs epsilon > 0");
}

bool IsOutlier(double value, double mean, double stddev, const OutlierRule& rule) {
  if (stddev > 0) return value > mean + rule.k * stddev;
  return value > mean + rule.epsilon;
}

void RunningStats::Add(double value) {
  ++count_;
  double delta = value - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (value - mean_);
}

double RunningStats::stddev() const {
  if (count_ == 0) return 0.0;
  return std::sqrt(std::max(0.0, m2_ / static_cast<double>(count_)));
}

const SearchStats& StatsOf(const SearchResult& result) {
  return std::visit([](const auto& r) -> const SearchStats& { return r.stats; },
                    result);
}

SearchResult BdSearch(const Sut& sut, const Stepper& stepper, Direction direction,
                      const DistanceFunction& d_out, const Entrance& entrance,
                      const OutlierRule& rule, size_t max_steps) {
  rule.Validate();
  if (max_steps < rule.warmup) {
    throw PreconditionError("max_steps must be at least the warmup length");
  }
  auto next = stepper.Step(entrance.first, direction);
  if (!next || !(*next == entrance.second)) {
    throw PreconditionError("entrance is not a stepper pair");
  }

  ChainEvaluator evaluator(sut);
  MemoizedDistance distance(d_out);
  RunningStats stats;
  InputPoint p1 = entrance.first;
  InputPoint p2 = entrance.second;
  for (size_t step = 1;; ++step) {
    SutOutput o1 = evaluator.Evaluate(p1);
    const SutOutput& o2 = evaluator.Evaluate(p2);
    double d = distance.Between(o1, o2);
    if (stats.count() >= rule.warmup &&
        IsOutlier(d, stats.mean(), stats.stddev(), rule)) {
      return BoundaryCandidate{{p1, p2}, {std::move(o1), o2}, d,
                               MakeStats(step, stats, evaluator)};
    }
    stats.Add(d);
    if (step == max_steps) return Exhausted{MakeStats(step, stats, evaluator)};
    auto stepped = stepper.Step(p2, direction);
    if (!stepped) {
      return RangeEnd{MakeStats(step, stats, evaluator), p2,
                      std::string(kLeftRange)};
    }
    p1 = std::move(p2);
    p2 = std::move(*stepped);
  }
}

ScanTrace Scan(const Sut& sut, const Stepper& stepper, Direction direction,
               const DistanceFunction& d_out, const Entrance& entrance,
               size_t n_steps, const DistanceFunction& d_in) {
  if (n_steps < 1) throw PreconditionError("scan needs at least one step");
  ScanTrace trace{sut.id(), d_out.Name(), d_in.Name(), d_out.codec().Id(),
                  {}, false, {}};
  trace.samples.reserve(n_steps);
  ChainEvaluator evaluator(sut);
  MemoizedDistance distance(d_out);
  InputPoint p1 = entrance.first;
  InputPoint p2 = entrance.second;
  for (size_t step = 1;; ++step) {
    ScanSample sample{step, p1, p2, evaluator.Evaluate(p1), evaluator.Evaluate(p2),
                      d_in.Between(p1, p2), 0, 0};
    sample.d_out = distance.Between(sample.o1, sample.o2);
    sample.derivative = Derivative(sample.d_in, sample.d_out);
    trace.samples.push_back(std::move(sample));
    if (step == n_steps) break;
    auto stepped = stepper.Step(p2, direction);
    if (!stepped) {
      trace.truncated = true;
      trace.reason = std::string(kLeftRange);
      break;
    }
    p1 = std::move(p2);
    p2 = std::move(*stepped);
  }
  return trace;
}

uint64_t Fnv1a64(std::string_view text) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string ScanTraceToCsv(const ScanTrace& trace) {
  std::string out =
      "step,x1,x2,o1_status,o1_text_hash,o2_status,o2_text_hash,d_out,"
      "derivative\n";
  char hash1[17], hash2[17];
  for (const auto& s : trace.samples) {
    std::snprintf(hash1, sizeof(hash1), "%016llx",
                  static_cast<unsigned long long>(Fnv1a64(s.o1.text)));
    std::snprintf(hash2, sizeof(hash2), "%016llx",
                  static_cast<unsigned long long>(Fnv1a64(s.o2.text)));
    out += std::to_string(s.step) + "," + JoinCoords(s.x1) + "," +
           JoinCoords(s.x2) + "," + std::string(StatusName(s.o1.status)) + "," +
           hash1 + "," + std::string(StatusName(s.o2.status)) + "," + hash2 +
           "," + FormatReal(s.d_out) + "," + FormatReal(s.derivative) + "\n";
  }
  return out;
}

}  // namespace boundex
