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

#include <charconv>
#include <limits>

#include "boundex/julia_date.h"

namespace boundex {
namespace {

const auto& DateDims() {
  static const auto* dims = new std::shared_ptr<const std::vector<std::string>>(
      std::make_shared<const std::vector<std::string>>(
          std::vector<std::string>{"year", "month", "day"}));
  return *dims;
}

julia_date::Ymd ToYmd(const InputPoint& x) {
  if (x.size() != 3) {
    throw PreconditionError("date input needs [year, month, day], got " +
                            x.ToString());
  }
  return {x[0], x[1], x[2]};
}

InputPoint ScalarPoint(int64_t value) { return InputPoint({"x"}, {value}); }

class BuiltinSut : public Sut {
 public:
  BuiltinSut(SutDescriptor descriptor, std::unique_ptr<Stepper> stepper)
      : descriptor_(std::move(descriptor)), stepper_(std::move(stepper)) {}
  const SutDescriptor& descriptor() const override { return descriptor_; }
  const Stepper& stepper() const override { return *stepper_; }

 private:
  SutDescriptor descriptor_;
  std::unique_ptr<Stepper> stepper_;
};

class JuliaDateSut final : public BuiltinSut {
 public:
  using BuiltinSut::BuiltinSut;
  SutOutput Evaluate(const InputPoint& x) const override {
    return DateConstruct(x);
  }
};

class StepSut final : public BuiltinSut {
 public:
  StepSut(SutDescriptor descriptor, int64_t threshold)
      : BuiltinSut(std::move(descriptor), std::make_unique<IntegerStepper>()),
        threshold_(threshold) {}
  SutOutput Evaluate(const InputPoint& x) const override {
    return StepSutEval(x, threshold_);
  }

 private:
  int64_t threshold_;
};

class ConstSut final : public BuiltinSut {
 public:
  using BuiltinSut::BuiltinSut;
  SutOutput Evaluate(const InputPoint&) const override {
    return SutOutput::Ok("x");
  }
};

SutDescriptor ScalarDescriptor(std::string id) {
  return SutDescriptor{
      std::move(id),
      {{"x", std::nullopt, std::nullopt}},
      {{"origin", {ScalarPoint(0), ScalarPoint(1)}, Direction::kNext}}};
}

}  // namespace

std::string_view DirectionName(Direction direction) {
  return direction == Direction::kNext ? "next" : "previous";
}

Direction ParseDirection(std::string_view name) {
  if (name == "next") return Direction::kNext;
  if (name == "previous") return Direction::kPrevious;
  throw std::invalid_argument("unknown direction: " + std::string(name));
}

std::vector<std::string> SutDescriptor::DimNames() const {
  std::vector<std::string> names;
  names.reserve(dims.size());
  for (const auto& dim : dims) names.push_back(dim.name);
  return names;
}

const NamedEntrance* SutDescriptor::FindEntrance(std::string_view name) const {
  for (const auto& entrance : entrances) {
    if (entrance.name == name) return &entrance;
  }
  return nullptr;
}

void ValidateEntrance(const Sut& sut, const Entrance& entrance,
                      Direction direction) {
  auto dims = sut.descriptor().DimNames();
  if (entrance.first.size() != dims.size() ||
      entrance.second.size() != dims.size()) {
    throw PreconditionError("entrance points must have " +
                            std::to_string(dims.size()) + " coordinates");
  }
  auto next = sut.stepper().Step(entrance.first, direction);
  if (!next || !(*next == entrance.second)) {
    throw PreconditionError("entrance " + entrance.second.ToString() +
                            " is not the " +
                            std::string(DirectionName(direction)) + " of " +
                            entrance.first.ToString());
  }
}

std::optional<InputPoint> IntegerStepper::Step(const InputPoint& x,
                                               Direction direction) const {
  if (axis_ >= x.size()) return std::nullopt;
  int64_t value = x[axis_];
  if (direction == Direction::kNext) {
    if (value == std::numeric_limits<int64_t>::max()) return std::nullopt;
    return x.WithCoord(axis_, value + 1);
  }
  if (value == std::numeric_limits<int64_t>::min()) return std::nullopt;
  return x.WithCoord(axis_, value - 1);
}

std::optional<InputPoint> DateStepper::Step(const InputPoint& x,
                                            Direction direction) const {
  return DateStep(x, direction);
}

InputPoint DatePoint(int64_t year, int64_t month, int64_t day) {
  return InputPoint(DateDims(), {year, month, day});
}

SutOutput DateConstruct(const InputPoint& x) {
  return julia_date::Construct(ToYmd(x));
}

std::optional<InputPoint> DateStep(const InputPoint& x, Direction direction) {
  auto date = ToYmd(x);
  if (date.month < 1 || date.month > 12 || date.day < 1 ||
      date.day > julia_date::DaysInMonth(date.year, date.month)) {
    return std::nullopt;
  }
  auto stepped = julia_date::Step(date, direction == Direction::kNext
                                            ? julia_date::Direction::kNext
                                            : julia_date::Direction::kPrevious);
  if (!stepped) return std::nullopt;
  return x.WithCoords({stepped->year, stepped->month, stepped->day});
}

SutOutput StepSutEval(const InputPoint& x, int64_t threshold) {
  if (x.size() != 1) throw PreconditionError("step SUT is one-dimensional");
  return SutOutput::Ok(x[0] < threshold ? "low" : "high");
}

std::unique_ptr<Sut> MakeJuliaDateSut() {
  using julia_date::kTypeMax;
  using julia_date::kTypeMin;
  SutDescriptor descriptor{
      "julia-date",
      {{"year", kTypeMin.year, kTypeMax.year},
       {"month", 1, 12},
       {"day", 1, 31}},
      {{"typemax",
        {DatePoint(kTypeMax.year, 12, 31), DatePoint(kTypeMax.year + 1, 1, 1)},
        Direction::kNext},
       {"typemin",
        {DatePoint(kTypeMin.year, 1, 1), DatePoint(kTypeMin.year - 1, 12, 31)},
        Direction::kPrevious}}};
  return std::make_unique<JuliaDateSut>(std::move(descriptor),
                                        std::make_unique<DateStepper>());
}

std::unique_ptr<Sut> MakeStepSut(int64_t threshold) {
  return std::make_unique<StepSut>(
      ScalarDescriptor("step" + std::to_string(threshold)), threshold);
}

std::unique_ptr<Sut> MakeConstSut() {
  return std::make_unique<ConstSut>(ScalarDescriptor("const"),
                                    std::make_unique<IntegerStepper>());
}

std::unique_ptr<Sut> MakeBuiltinSut(std::string_view id) {
  if (id == "julia-date") return MakeJuliaDateSut();
  if (id == "const") return MakeConstSut();
  if (id.starts_with("step")) {
    std::string_view digits = id.substr(4);
    int64_t threshold = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), threshold);
    if (ec == std::errc() && ptr == digits.data() + digits.size() &&
        !digits.empty()) {
      return MakeStepSut(threshold);
    }
  }
  return nullptr;
}

std::vector<std::string> BuiltinSutIds() {
  return {"julia-date", "step100", "const"};
}

}  // namespace boundex
