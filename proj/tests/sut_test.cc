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

#include "boundex/sut.h"

#include <gtest/gtest.h>

#include <limits>

namespace boundex {
namespace {

TEST(StepSutTest, Examples) {
  EXPECT_EQ(StepSutEval(InputPoint({"x"}, {99}), 100), SutOutput::Ok("low"));
  EXPECT_EQ(StepSutEval(InputPoint({"x"}, {100}), 100), SutOutput::Ok("high"));
  EXPECT_EQ(StepSutEval(InputPoint({"x"}, {std::numeric_limits<int64_t>::min()}), 0),
            SutOutput::Ok("low"));
  EXPECT_THROW(StepSutEval(InputPoint({"x", "y"}, {1, 2}), 0), PreconditionError);
}

TEST(BuiltinSutTest, Registry) {
  for (const auto& id : BuiltinSutIds()) {
    auto sut = MakeBuiltinSut(id);
    ASSERT_NE(sut, nullptr) << id;
    EXPECT_EQ(sut->id(), id);
  }
  EXPECT_NE(MakeBuiltinSut("step7"), nullptr);
  EXPECT_EQ(MakeBuiltinSut("step"), nullptr);
  EXPECT_EQ(MakeBuiltinSut("stepx"), nullptr);
  EXPECT_EQ(MakeBuiltinSut("nope"), nullptr);
}

TEST(BuiltinSutTest, EntrancesAreSuccessorPairs) {
  for (const auto& id : BuiltinSutIds()) {
    auto sut = MakeBuiltinSut(id);
    for (const auto& named : sut->descriptor().entrances) {
      EXPECT_NO_THROW(ValidateEntrance(*sut, named.entrance, named.direction))
          << id << " " << named.name;
      auto stepped = sut->stepper().Step(named.entrance.first, named.direction);
      ASSERT_TRUE(stepped.has_value());
      EXPECT_EQ(*stepped, named.entrance.second);
    }
  }
}

TEST(DateSutTest, Descriptor) {
  auto sut = MakeJuliaDateSut();
  EXPECT_EQ(sut->descriptor().DimNames(),
            (std::vector<std::string>{"year", "month", "day"}));
  const auto* typemax = sut->descriptor().FindEntrance("typemax");
  ASSERT_NE(typemax, nullptr);
  EXPECT_EQ(typemax->entrance.first, DatePoint(252522163911149, 12, 31));
  EXPECT_EQ(typemax->entrance.second, DatePoint(252522163911150, 1, 1));
  EXPECT_EQ(typemax->direction, Direction::kNext);
  const auto* typemin = sut->descriptor().FindEntrance("typemin");
  ASSERT_NE(typemin, nullptr);
  EXPECT_EQ(typemin->entrance.first, DatePoint(-252522163911150, 1, 1));
  EXPECT_EQ(typemin->entrance.second, DatePoint(-252522163911151, 12, 31));
  EXPECT_EQ(typemin->direction, Direction::kPrevious);
  EXPECT_EQ(sut->descriptor().FindEntrance("nope"), nullptr);
}

TEST(DateSutTest, EvaluateAndStep) {
  auto sut = MakeJuliaDateSut();
  EXPECT_EQ(sut->Evaluate(DatePoint(2020, 0, 31)),
            SutOutput::Error("Month: 0 out of range (1:12)"));
  EXPECT_EQ(sut->Evaluate(DatePoint(252522163911151, 10, 8)),
            SutOutput::Ok("-252522163911149-6028347736506385-06"));
  EXPECT_EQ(*DateStep(DatePoint(2020, 12, 31), Direction::kNext), DatePoint(2021, 1, 1));
  EXPECT_FALSE(DateStep(DatePoint(2020, 13, 1), Direction::kNext).has_value());
  EXPECT_FALSE(DateStep(DatePoint(2019, 2, 29), Direction::kNext).has_value());
  EXPECT_EQ(DateStep(DatePoint(2020, 3, 1), Direction::kPrevious)->dims(),
            DatePoint(0, 0, 0).dims());
}

TEST(EntranceTest, RejectsNonSuccessors) {
  auto sut = MakeStepSut(100);
  Entrance entrance{InputPoint({"x"}, {0}), InputPoint({"x"}, {2})};
  EXPECT_THROW(ValidateEntrance(*sut, entrance, Direction::kNext), PreconditionError);
  entrance.second = InputPoint({"x"}, {-1});
  EXPECT_THROW(ValidateEntrance(*sut, entrance, Direction::kNext), PreconditionError);
  EXPECT_NO_THROW(ValidateEntrance(*sut, entrance, Direction::kPrevious));
  Entrance wide{InputPoint({"x", "y"}, {0, 0}), InputPoint({"x", "y"}, {1, 0})};
  EXPECT_THROW(ValidateEntrance(*sut, wide, Direction::kNext), PreconditionError);
}

TEST(IntegerStepperTest, InverseAndBounds) {
  IntegerStepper stepper(1);
  InputPoint x({"a", "b"}, {5, -7});
  EXPECT_EQ(*stepper.Step(x, Direction::kNext), InputPoint({"a", "b"}, {5, -6}));
  EXPECT_EQ(*stepper.Step(*stepper.Step(x, Direction::kNext), Direction::kPrevious), x);
  InputPoint top({"a", "b"}, {0, std::numeric_limits<int64_t>::max()});
  EXPECT_FALSE(stepper.Step(top, Direction::kNext).has_value());
  InputPoint bottom({"a", "b"}, {0, std::numeric_limits<int64_t>::min()});
  EXPECT_FALSE(stepper.Step(bottom, Direction::kPrevious).has_value());
}

TEST(DirectionTest, Names) {
  EXPECT_EQ(DirectionName(Direction::kNext), "next");
  EXPECT_EQ(ParseDirection("previous"), Direction::kPrevious);
  EXPECT_THROW(ParseDirection("up"), std::invalid_argument);
}

TEST(InputPointTest, Basics) {
  InputPoint p({"year", "month", "day"}, {2020, 2, 29});
  EXPECT_EQ(p.IndexOf("month"), 1u);
  EXPECT_EQ(p.IndexOf("hour"), 3u);
  EXPECT_EQ(p.ToString(), "(2020,2,29)");
  EXPECT_EQ(p.Serialize(), std::string("2020\x1f" "2\x1f" "29"));
  EXPECT_EQ(p, InputPoint({"y", "m", "d"}, {2020, 2, 29}));
  EXPECT_LT(p, p.WithCoord(2, 30));
  EXPECT_THROW(InputPoint({"a"}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(InputPoint(std::vector<std::string>{}, {}), std::invalid_argument);
}

}  // namespace
}  // namespace boundex
