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

#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <mutex>

#include "boundex/sut.h"
#include "test_util.h"

namespace boundex {
namespace {

const DistanceFunction kNcd(DistanceKind::kNcd);

Entrance Origin() { return {InputPoint({"x"}, {0}), InputPoint({"x"}, {1})}; }

// Forwards to another SUT and records every input it sees.
class RecordingSut : public Sut {
 public:
  explicit RecordingSut(std::unique_ptr<Sut> inner) : inner_(std::move(inner)) {}
  const SutDescriptor& descriptor() const override { return inner_->descriptor(); }
  const Stepper& stepper() const override { return inner_->stepper(); }
  SutOutput Evaluate(const InputPoint& x) const override {
    std::lock_guard<std::mutex> lock(mu_);
    ++calls_;
    seen_.insert(x.coords());
    return inner_->Evaluate(x);
  }
  size_t calls() const { return calls_; }
  size_t distinct() const { return seen_.size(); }

 private:
  std::unique_ptr<Sut> inner_;
  mutable std::mutex mu_;
  mutable size_t calls_ = 0;
  mutable std::set<std::vector<int64_t>> seen_;
};

TEST(OutlierRuleTest, Examples) {
  OutlierRule rule;
  EXPECT_TRUE(IsOutlier(10, 1, 1, rule));
  EXPECT_FALSE(IsOutlier(3.9, 1, 1, rule));
  EXPECT_FALSE(IsOutlier(4, 1, 1, rule));  // strict
  EXPECT_TRUE(IsOutlier(0.50000001, 0.5, 0, rule));
  EXPECT_FALSE(IsOutlier(0.5 + 1e-10, 0.5, 0, rule));
}

TEST(OutlierRuleTest, Validate) {
  EXPECT_NO_THROW(OutlierRule{}.Validate());
  EXPECT_THROW((OutlierRule{0, 30, 1e-9}.Validate()), PreconditionError);
  EXPECT_THROW((OutlierRule{3, 1, 1e-9}.Validate()), PreconditionError);
  EXPECT_THROW((OutlierRule{3, 30, 0}.Validate()), PreconditionError);
}

TEST(RunningStatsTest, MatchesTwoPassPopulationStats) {
  testing::SplitMix64 rng(31);
  RunningStats stats;
  std::vector<double> values;
  for (int i = 0; i < 500; ++i) {
    double v = static_cast<double>(rng.Uniform(0, 1000000)) / 1e6;
    values.push_back(v);
    stats.Add(v);
  }
  double mean = 0;
  for (double v : values) mean += v;
  mean /= values.size();
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= values.size();
  EXPECT_NEAR(stats.mean(), mean, 1e-12);
  EXPECT_NEAR(stats.stddev(), std::sqrt(var), 1e-12);
  EXPECT_EQ(stats.count(), 500u);
}

TEST(BdSearchTest, StepSutDefaultThreshold) {
  auto sut = MakeStepSut(100);
  auto result = BdSearch(*sut, sut->stepper(), Direction::kNext, kNcd, Origin());
  const auto* candidate = std::get_if<BoundaryCandidate>(&result);
  ASSERT_NE(candidate, nullptr);
  EXPECT_EQ(candidate->pair.first, InputPoint({"x"}, {99}));
  EXPECT_EQ(candidate->pair.second, InputPoint({"x"}, {100}));
  EXPECT_EQ(candidate->outputs.first, SutOutput::Ok("low"));
  EXPECT_EQ(candidate->outputs.second, SutOutput::Ok("high"));
  EXPECT_EQ(candidate->stats.steps_taken, 100u);
  EXPECT_EQ(candidate->stats.stddev, 0.0);
}

// Thresholds anywhere past the warmup give exactly (T-1, T).
TEST(BdSearchTest, StepSutProperty) {
  testing::SplitMix64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    int64_t threshold = rng.Uniform(40, 100000);
    auto sut = MakeStepSut(threshold);
    auto result = BdSearch(*sut, sut->stepper(), Direction::kNext, kNcd, Origin());
    const auto* candidate = std::get_if<BoundaryCandidate>(&result);
    ASSERT_NE(candidate, nullptr) << threshold;
    ASSERT_EQ(candidate->pair.first[0], threshold - 1);
    ASSERT_EQ(candidate->pair.second[0], threshold);
  }
}

TEST(BdSearchTest, StepInsideWarmupIsNotReported) {
  auto sut = MakeStepSut(10);
  auto result = BdSearch(*sut, sut->stepper(), Direction::kNext, kNcd, Origin(),
                         OutlierRule{}, 1000);
  EXPECT_TRUE(std::holds_alternative<Exhausted>(result));
}

TEST(BdSearchTest, ConstSutExhausts) {
  auto sut = MakeConstSut();
  auto result = BdSearch(*sut, sut->stepper(), Direction::kNext, kNcd, Origin(),
                         OutlierRule{}, 1000);
  const auto* exhausted = std::get_if<Exhausted>(&result);
  ASSERT_NE(exhausted, nullptr);
  EXPECT_EQ(exhausted->stats.steps_taken, 1000u);
  EXPECT_EQ(exhausted->stats.stddev, 0.0);
  EXPECT_DOUBLE_EQ(exhausted->stats.mean, 0.023809523809523808);
}

TEST(BdSearchTest, RangeEndAtInt64Limit) {
  auto sut = MakeConstSut();
  int64_t top = std::numeric_limits<int64_t>::max();
  Entrance entrance{InputPoint({"x"}, {top - 5}), InputPoint({"x"}, {top - 4})};
  auto result = BdSearch(*sut, sut->stepper(), Direction::kNext, kNcd, entrance,
                         OutlierRule{3, 2, 1e-9}, 100);
  const auto* end = std::get_if<RangeEnd>(&result);
  ASSERT_NE(end, nullptr);
  EXPECT_EQ(end->last, InputPoint({"x"}, {top}));
  EXPECT_EQ(end->reason, kLeftRange);
  EXPECT_EQ(end->stats.steps_taken, 5u);
}

TEST(BdSearchTest, Preconditions) {
  auto sut = MakeStepSut(100);
  EXPECT_THROW(BdSearch(*sut, sut->stepper(), Direction::kNext, kNcd, Origin(),
                        OutlierRule{}, 10),
               PreconditionError);
  Entrance bad{InputPoint({"x"}, {0}), InputPoint({"x"}, {5})};
  EXPECT_THROW(BdSearch(*sut, sut->stepper(), Direction::kNext, kNcd, bad),
               PreconditionError);
}

TEST(BdSearchTest, EvaluatesEachInputOnce) {
  for (const char* entrance_name : {"typemax", "typemin"}) {
    RecordingSut sut(MakeJuliaDateSut());
    const auto* named = sut.descriptor().FindEntrance(entrance_name);
    auto result = BdSearch(sut, sut.stepper(), named->direction, kNcd, named->entrance);
    const auto& stats = StatsOf(result);
    EXPECT_LE(sut.distinct(), stats.steps_taken + 2);
    EXPECT_EQ(sut.calls(), sut.distinct());
    EXPECT_EQ(stats.sut_evaluations, sut.calls());
  }
}

// Recomputes the trace from scratch and checks the candidate's numbers.
TEST(BdSearchTest, CandidateAgreesWithRecomputation) {
  auto sut = MakeJuliaDateSut();
  for (const auto& named : sut->descriptor().entrances) {
    auto result = BdSearch(*sut, sut->stepper(), named.direction, kNcd, named.entrance);
    const auto* candidate = std::get_if<BoundaryCandidate>(&result);
    ASSERT_NE(candidate, nullptr) << named.name;
    ASSERT_EQ(kNcd.Between(sut->Evaluate(candidate->pair.first),
                           sut->Evaluate(candidate->pair.second)),
              candidate->distance);
    ASSERT_EQ(candidate->outputs.first, sut->Evaluate(candidate->pair.first));

    std::vector<double> prior;
    InputPoint a = named.entrance.first, b = named.entrance.second;
    for (size_t step = 1; step < candidate->stats.steps_taken; ++step) {
      prior.push_back(kNcd.Between(sut->Evaluate(a), sut->Evaluate(b)));
      a = b;
      b = *sut->stepper().Step(b, named.direction);
    }
    EXPECT_EQ(a, candidate->pair.first);
    EXPECT_EQ(b, candidate->pair.second);
    double mean = 0;
    for (double v : prior) mean += v;
    mean /= prior.size();
    double var = 0;
    for (double v : prior) var += (v - mean) * (v - mean);
    double sd = std::sqrt(var / prior.size());
    EXPECT_NEAR(candidate->stats.mean, mean, 1e-12);
    EXPECT_NEAR(candidate->stats.stddev, sd, 1e-12);
    EXPECT_GT(candidate->distance, mean + 3 * sd);
    for (size_t i = 30; i < prior.size(); ++i) {
      RunningStats before;
      for (size_t j = 0; j < i; ++j) before.Add(prior[j]);
      ASSERT_FALSE(IsOutlier(prior[i], before.mean(), before.stddev(), OutlierRule{}))
          << named.name << " step " << i + 1;
    }
  }
}

TEST(BdSearchTest, DateSearchStepCounts) {
  auto sut = MakeJuliaDateSut();
  const auto& desc = sut->descriptor();
  auto up = BdSearch(*sut, sut->stepper(), Direction::kNext, kNcd,
                     desc.FindEntrance("typemax")->entrance);
  auto down = BdSearch(*sut, sut->stepper(), Direction::kPrevious, kNcd,
                       desc.FindEntrance("typemin")->entrance);
  EXPECT_EQ(StatsOf(up).steps_taken, 281u);
  EXPECT_EQ(StatsOf(down).steps_taken, 162u);
  const auto& top = std::get<BoundaryCandidate>(up);
  EXPECT_EQ(top.pair.first, DatePoint(252522163911150, 10, 7));
  EXPECT_EQ(top.outputs.second.text, "-252522163911150-6028347736506385-06");
  const auto& bottom = std::get<BoundaryCandidate>(down);
  EXPECT_EQ(bottom.pair.first, DatePoint(-252522163911151, 7, 24));
  EXPECT_EQ(bottom.outputs.second.text, "252522163911150--6028347736506379--07");
}

TEST(BdSearchTest, Deterministic) {
  auto sut = MakeJuliaDateSut();
  const auto* named = sut->descriptor().FindEntrance("typemin");
  auto a = BdSearch(*sut, sut->stepper(), named->direction, kNcd, named->entrance);
  auto b = BdSearch(*sut, sut->stepper(), named->direction, kNcd, named->entrance);
  const auto& ca = std::get<BoundaryCandidate>(a);
  const auto& cb = std::get<BoundaryCandidate>(b);
  EXPECT_EQ(ca.pair, cb.pair);
  EXPECT_EQ(ca.distance, cb.distance);
  EXPECT_EQ(ca.stats.mean, cb.stats.mean);
  EXPECT_EQ(ca.stats.stddev, cb.stats.stddev);
}

TEST(ScanTest, ChainAndCount) {
  auto sut = MakeStepSut(100);
  ScanTrace trace = Scan(*sut, sut->stepper(), Direction::kNext, kNcd, Origin(), 3);
  ASSERT_EQ(trace.samples.size(), 3u);
  EXPECT_FALSE(trace.truncated);
  for (size_t i = 0; i + 1 < trace.samples.size(); ++i) {
    EXPECT_EQ(trace.samples[i].x2, trace.samples[i + 1].x1);
    EXPECT_EQ(trace.samples[i].step, i + 1);
  }
  EXPECT_EQ(trace.sut_id, "step100");
  EXPECT_EQ(trace.d_out_id, "ncd");
  EXPECT_EQ(trace.d_in_id, "discrete");
  EXPECT_EQ(trace.codec_id, "bzip2:9");
  EXPECT_THROW(Scan(*sut, sut->stepper(), Direction::kNext, kNcd, Origin(), 0),
               PreconditionError);
}

TEST(ScanTest, ConstSutIsFlat) {
  auto sut = MakeConstSut();
  ScanTrace trace = Scan(*sut, sut->stepper(), Direction::kNext, kNcd, Origin(), 10);
  double expected = kNcd.Between(SutOutput::Ok("x"), SutOutput::Ok("x"));
  for (const auto& s : trace.samples) {
    EXPECT_EQ(s.d_out, expected);
    EXPECT_EQ(s.derivative, s.d_out);
  }
}

TEST(ScanTest, TypemaxPeakAt281) {
  auto sut = MakeJuliaDateSut();
  const auto* named = sut->descriptor().FindEntrance("typemax");
  ScanTrace trace =
      Scan(*sut, sut->stepper(), named->direction, kNcd, named->entrance, 400);
  ASSERT_EQ(trace.samples.size(), 400u);
  size_t best = 0;
  for (size_t i = 1; i < trace.samples.size(); ++i) {
    if (trace.samples[i].d_out > trace.samples[best].d_out) best = i;
  }
  EXPECT_EQ(trace.samples[best].step, 281u);
  for (size_t i = 0; i < trace.samples.size(); ++i) {
    if (i != best) EXPECT_LT(trace.samples[i].d_out, trace.samples[best].d_out);
    EXPECT_EQ(trace.samples[i].derivative * trace.samples[i].d_in,
              trace.samples[i].d_out);
  }
}

TEST(ScanTest, AbsoluteInputDistance) {
  auto sut = MakeStepSut(3);
  ScanTrace trace = Scan(*sut, sut->stepper(), Direction::kNext, kNcd, Origin(), 5,
                         DistanceFunction(DistanceKind::kAbsoluteNumeric));
  for (const auto& s : trace.samples) EXPECT_EQ(s.d_in, 1.0);
}

TEST(ScanTest, TruncatesAtRangeEnd) {
  auto sut = MakeConstSut();
  int64_t top = std::numeric_limits<int64_t>::max();
  Entrance entrance{InputPoint({"x"}, {top - 2}), InputPoint({"x"}, {top - 1})};
  ScanTrace trace = Scan(*sut, sut->stepper(), Direction::kNext, kNcd, entrance, 10);
  EXPECT_TRUE(trace.truncated);
  EXPECT_EQ(trace.reason, kLeftRange);
  EXPECT_EQ(trace.samples.size(), 2u);
}

TEST(ScanTest, Csv) {
  auto sut = MakeStepSut(2);
  ScanTrace trace = Scan(*sut, sut->stepper(), Direction::kNext, kNcd, Origin(), 2);
  std::string csv = ScanTraceToCsv(trace);
  std::string header =
      "step,x1,x2,o1_status,o1_text_hash,o2_status,o2_text_hash,d_out,derivative\n";
  ASSERT_EQ(csv.substr(0, header.size()), header);
  EXPECT_NE(csv.find("\n1,0,1,ok,"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  // FNV-1a test vectors.
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

}  // namespace
}  // namespace boundex
