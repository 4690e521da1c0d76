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

// Boundariness walls over axis-aligned input lattices.
//
// A Region sweeps up to a few dimensions over [lo, hi] with a stride and pins
// the remaining SUT dimensions to constants. Every lattice cell is evaluated
// once; every pair of cells adjacent along one swept axis gets a Wall whose
// boundariness is the output distance between the two cells.

#ifndef BOUNDEX_EXPLORE_H_
#define BOUNDEX_EXPLORE_H_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boundex/distance.h"
#include "boundex/sut.h"

namespace boundex {

inline constexpr uint64_t kDefaultCellBudget = 100'000;

struct Axis {
  std::string name;
  int64_t lo = 0;
  int64_t hi = 0;
  int64_t stride = 1;

  // floor((hi - lo) / stride) + 1, computed without overflow.
  uint64_t cells() const;
  friend bool operator==(const Axis&, const Axis&) = default;
};

struct Binding {
  std::string name;
  int64_t value = 0;
  friend bool operator==(const Binding&, const Binding&) = default;
};

struct Region {
  std::vector<Axis> swept;
  std::vector<Binding> fixed;

  // Throws PreconditionError on lo > hi, stride < 1, no swept axis or a
  // repeated dimension name.
  void Validate() const;
  // Product of per-axis cell counts, saturating at UINT64_MAX.
  uint64_t CellCount() const;
  // Sum over axes of (cells along it - 1) * (cells along the others).
  uint64_t WallCount() const;
  // Every swept coordinate within [lo, hi] and every binding matched.
  bool Contains(const InputPoint& point) const;

  friend bool operator==(const Region&, const Region&) = default;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(uint64_t required, uint64_t allowed);
  uint64_t required() const { return required_; }
  uint64_t allowed() const { return allowed_; }

 private:
  uint64_t required_;
  uint64_t allowed_;
};

struct Wall {
  InputPoint a;  // lower cell
  InputPoint b;  // a plus one stride along `axis`
  std::string axis;
  double boundariness = 0;  // d_out(a, b)
  double derivative = 0;    // boundariness / stride
  Status status_a = Status::kOk;
  Status status_b = Status::kOk;
};

struct GridResult {
  Region region;
  std::vector<Wall> walls;
  std::string sut_id;
  std::string distance_id;
  std::string codec_id;
  uint64_t cells_evaluated = 0;

  double MaxBoundariness() const;
};

struct GridOptions {
  uint64_t budget = kDefaultCellBudget;
  size_t threads = 0;  // 0: hardware concurrency
  // Called from the calling thread as cells and walls complete.
  std::function<void(uint64_t done, uint64_t total)> progress;
};

// Walls are ordered axis-major (region.swept order), then lexicographically
// by the coordinates of `a`. Throws BudgetExceeded when the region has more
// cells than options.budget, PreconditionError when the region does not bind
// exactly the SUT's dimensions. A SUT exception for a cell becomes an error
// output "engine: <message>" for that cell.
GridResult ComputeWalls(const Sut& sut, const Region& region,
                        const DistanceFunction& d_out,
                        const GridOptions& options = {});

// The k walls with the highest boundariness; ties keep wall order.
std::vector<Wall> TopWalls(const GridResult& grid, size_t k);

// A region centered on `focus` with every swept span scaled by 1/zoom (at
// least one cell) and stride scaled by 1/zoom (at least 1), clamped to the
// int64 range. zoom == 1 returns the region unchanged. Throws
// PreconditionError if focus is outside the region or zoom is not a positive
// finite number.
Region Refine(const Region& region, const InputPoint& focus, double zoom);

}  // namespace boundex

#endif  // BOUNDEX_EXPLORE_H_
