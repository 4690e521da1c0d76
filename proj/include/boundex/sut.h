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

// The software-under-test abstraction and the built-in SUTs.
//
// A SUT maps an InputPoint to a SutOutput. Error outputs are ordinary,
// observable behaviour; an exception from Evaluate() means the engine itself
// could not obtain an output. Each SUT owns a Stepper that defines the
// successor relation searches walk along, and may name entrances: pairs of
// neighbouring inputs believed to straddle a boundary.

#ifndef BOUNDEX_SUT_H_
#define BOUNDEX_SUT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boundex/types.h"

namespace boundex {

enum class Direction { kNext, kPrevious };

std::string_view DirectionName(Direction direction);  // "next" | "previous"
Direction ParseDirection(std::string_view name);      // throws invalid_argument

struct Entrance {
  InputPoint first;
  InputPoint second;
};

struct NamedEntrance {
  std::string name;
  Entrance entrance;
  Direction direction = Direction::kNext;
};

struct DimensionInfo {
  std::string name;
  std::optional<int64_t> lo;  // documented bounds, informational only
  std::optional<int64_t> hi;
};

struct SutDescriptor {
  std::string id;
  std::vector<DimensionInfo> dims;
  std::vector<NamedEntrance> entrances;

  std::vector<std::string> DimNames() const;
  const NamedEntrance* FindEntrance(std::string_view name) const;
};

inline constexpr std::string_view kLeftRange = "stepper left representable range";

class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual std::string Id() const = 0;
  // The neighbour of `x`, or nullopt when it is not representable (reported
  // as kLeftRange by callers).
  virtual std::optional<InputPoint> Step(const InputPoint& x,
                                         Direction direction) const = 0;
};

class Sut {
 public:
  virtual ~Sut() = default;
  virtual const SutDescriptor& descriptor() const = 0;
  virtual const Stepper& stepper() const = 0;
  // Must be safe to call concurrently.
  virtual SutOutput Evaluate(const InputPoint& x) const = 0;

  const std::string& id() const { return descriptor().id; }
};

// Throws PreconditionError unless `entrance.second` is the stepper's
// neighbour of `entrance.first` in `direction`.
void ValidateEntrance(const Sut& sut, const Entrance& entrance,
                      Direction direction);

// +/-1 along one axis; nullopt on int64 overflow.
class IntegerStepper : public Stepper {
 public:
  explicit IntegerStepper(size_t axis = 0) : axis_(axis) {}
  std::string Id() const override { return "unit"; }
  std::optional<InputPoint> Step(const InputPoint& x,
                                 Direction direction) const override;

 private:
  size_t axis_;
};

// Next/previous calendar day on (year, month, day) inputs.
class DateStepper : public Stepper {
 public:
  std::string Id() const override { return "calendar-day"; }
  std::optional<InputPoint> Step(const InputPoint& x,
                                 Direction direction) const override;
};

InputPoint DatePoint(int64_t year, int64_t month, int64_t day);

// Date(y, m, d) as constructed by Julia 1.1.1; see julia_date.h.
SutOutput DateConstruct(const InputPoint& x);
std::optional<InputPoint> DateStep(const InputPoint& x, Direction direction);

// ok "low" below the threshold, ok "high" from it on.
SutOutput StepSutEval(const InputPoint& x, int64_t threshold);

// "julia-date": the Date constructor, entrances "typemax" and "typemin".
std::unique_ptr<Sut> MakeJuliaDateSut();
// "step<T>": single dimension "x", entrance "origin" = ((0), (1)).
std::unique_ptr<Sut> MakeStepSut(int64_t threshold);
// "const": always ok "x", entrance "origin" = ((0), (1)).
std::unique_ptr<Sut> MakeConstSut();

// Any built-in id above ("step<T>" for any int64 T); nullptr if unknown.
std::unique_ptr<Sut> MakeBuiltinSut(std::string_view id);
std::vector<std::string> BuiltinSutIds();

}  // namespace boundex

#endif  // BOUNDEX_SUT_H_
