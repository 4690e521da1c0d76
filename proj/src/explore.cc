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

#include "boundex/explore.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace boundex {
namespace {

using Int128 = __int128;

constexpr int64_t kMin = std::numeric_limits<int64_t>::min();
constexpr int64_t kMax = std::numeric_limits<int64_t>::max();
constexpr uint64_t kSaturated = std::numeric_limits<uint64_t>::max();

uint64_t SaturatingMul(uint64_t a, uint64_t b) {
  uint64_t out = 0;
  return __builtin_mul_overflow(a, b, &out) ? kSaturated : out;
}

int64_t Clamp(Int128 value) {
  if (value < kMin) return kMin;
  if (value > kMax) return kMax;
  return static_cast<int64_t>(value);
}

// Runs fn(i) for i in [begin, end) on up to `threads` threads. Each index is
// handed to exactly one thread; callers write results by index.
template <typename Fn>
void ParallelFor(size_t begin, size_t end, size_t threads, Fn&& fn) {
  size_t n = end - begin;
  threads = std::max<size_t>(1, std::min(threads, n / 16 + 1));
  if (threads == 1) {
    for (size_t i = begin; i < end; ++i) fn(i, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  size_t chunk = (n + threads - 1) / threads;
  for (size_t t = 0; t < threads; ++t) {
    size_t lo = begin + t * chunk;
    size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, t] {
      try {
        for (size_t i = lo; i < hi; ++i) fn(i, t);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);
}

// Maps linear cell indices to InputPoints in the SUT's dimension order. The
// last SUT dimension varies fastest, so increasing index means increasing
// lexicographic coordinates.
class Lattice {
 public:
  Lattice(const Sut& sut, const Region& region) {
    auto names = sut.descriptor().DimNames();
    dims_ = std::make_shared<const std::vector<std::string>>(names);
    base_.assign(names.size(), 0);
    std::vector<bool> bound(names.size(), false);
    auto index_of = [&](const std::string& name) {
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) {
        throw PreconditionError("region dimension '" + name +
                                "' is not a dimension of " + sut.id());
      }
      size_t i = static_cast<size_t>(it - names.begin());
      if (bound[i]) throw PreconditionError("dimension '" + name + "' bound twice");
      bound[i] = true;
      return i;
    };
    for (const auto& binding : region.fixed) base_[index_of(binding.name)] = binding.value;
    for (const auto& axis : region.swept) {
      size_t dim = index_of(axis.name);
      axes_.push_back({dim, axis.lo, axis.stride, axis.cells()});
    }
    for (size_t i = 0; i < names.size(); ++i) {
      if (!bound[i]) {
        throw PreconditionError("region leaves dimension '" + names[i] +
                                "' unbound");
      }
    }
    // Place strides in SUT dimension order: later dimensions vary faster.
    std::vector<size_t> order(axes_.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return axes_[a].dim < axes_[b].dim; });
    uint64_t stride = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      axes_[*it].linear_stride = stride;
      stride *= axes_[*it].cells;
    }
    cells_ = stride;
  }

  uint64_t cells() const { return cells_; }
  size_t axis_count() const { return axes_.size(); }
  uint64_t cells_along(size_t axis) const { return axes_[axis].cells; }
  uint64_t linear_stride(size_t axis) const { return axes_[axis].linear_stride; }

  uint64_t Position(uint64_t index, size_t axis) const {
    return (index / axes_[axis].linear_stride) % axes_[axis].cells;
  }

  InputPoint PointAt(uint64_t index) const {
    std::vector<int64_t> coords = base_;
    for (size_t a = 0; a < axes_.size(); ++a) {
      const auto& axis = axes_[a];
      coords[axis.dim] = static_cast<int64_t>(
          axis.lo + static_cast<Int128>(Position(index, a)) * axis.stride);
    }
    return InputPoint(dims_, std::move(coords));
  }

 private:
  struct LatticeAxis {
    size_t dim;
    int64_t lo;
    int64_t stride;
    uint64_t cells;
    uint64_t linear_stride = 1;
  };

  std::shared_ptr<const std::vector<std::string>> dims_;
  std::vector<int64_t> base_;
  std::vector<LatticeAxis> axes_;
  uint64_t cells_ = 1;
};

}  // namespace

uint64_t Axis::cells() const {
  if (stride < 1 || lo > hi) return 0;
  auto span = static_cast<unsigned __int128>(static_cast<Int128>(hi) - lo);
  auto quotient = span / static_cast<uint64_t>(stride);
  return quotient >= kSaturated ? kSaturated : static_cast<uint64_t>(quotient) + 1;
}

void Region::Validate() const {
  if (swept.empty()) throw PreconditionError("region sweeps no dimension");
  std::set<std::string> names;
  for (const auto& axis : swept) {
    if (axis.lo > axis.hi) {
      throw PreconditionError("axis " + axis.name + " has lo > hi");
    }
    if (axis.stride < 1) {
      throw PreconditionError("axis " + axis.name + " needs stride >= 1");
    }
    if (!names.insert(axis.name).second) {
      throw PreconditionError("dimension " + axis.name + " appears twice");
    }
  }
  for (const auto& binding : fixed) {
    if (!names.insert(binding.name).second) {
      throw PreconditionError("dimension " + binding.name + " appears twice");
    }
  }
}

uint64_t Region::CellCount() const {
  uint64_t count = 1;
  for (const auto& axis : swept) count = SaturatingMul(count, axis.cells());
  return count;
}

uint64_t Region::WallCount() const {
  uint64_t total = 0;
  for (size_t a = 0; a < swept.size(); ++a) {
    uint64_t walls = swept[a].cells() - 1;
    for (size_t b = 0; b < swept.size(); ++b) {
      if (b != a) walls = SaturatingMul(walls, swept[b].cells());
    }
    if (__builtin_add_overflow(total, walls, &total)) return kSaturated;
  }
  return total;
}

bool Region::Contains(const InputPoint& point) const {
  auto coord = [&](const std::string& name, int64_t& value) {
    size_t i = point.IndexOf(name);
    if (i >= point.size()) return false;
    value = point[i];
    return true;
  };
  for (const auto& axis : swept) {
    int64_t value = 0;
    if (!coord(axis.name, value) || value < axis.lo || value > axis.hi) return false;
  }
  for (const auto& binding : fixed) {
    int64_t value = 0;
    if (coord(binding.name, value) && value != binding.value) return false;
  }
  return true;
}

BudgetExceeded::BudgetExceeded(uint64_t required, uint64_t allowed)
    : std::runtime_error("region needs " + std::to_string(required) +
                         " cells, budget allows " + std::to_string(allowed)),
      required_(required),
      allowed_(allowed) {}

double GridResult::MaxBoundariness() const {
  double best = 0;
  for (const auto& wall : walls) best = std::max(best, wall.boundariness);
  return best;
}

GridResult ComputeWalls(const Sut& sut, const Region& region,
                        const DistanceFunction& d_out,
                        const GridOptions& options) {
  region.Validate();
  uint64_t required = region.CellCount();
  if (required > options.budget) throw BudgetExceeded(required, options.budget);

  Lattice lattice(sut, region);
  size_t threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  GridResult grid;
  grid.region = region;
  grid.sut_id = sut.id();
  grid.distance_id = d_out.Name();
  grid.codec_id = d_out.codec().Id();

  uint64_t wall_total = region.WallCount();
  uint64_t total_work = lattice.cells() + wall_total;
  uint64_t done = 0;
  constexpr size_t kBatch = 4096;
  auto report = [&](uint64_t n) {
    done += n;
    if (options.progress) options.progress(done, total_work);
  };

  std::vector<SutOutput> outputs(lattice.cells());
  std::atomic<uint64_t> evaluations{0};
  for (size_t start = 0; start < outputs.size(); start += kBatch) {
    size_t end = std::min(outputs.size(), start + kBatch);
    ParallelFor(start, end, threads, [&](size_t i, size_t) {
      InputPoint x = lattice.PointAt(i);
      evaluations.fetch_add(1, std::memory_order_relaxed);
      try {
        outputs[i] = sut.Evaluate(x);
      } catch (const std::exception& e) {
        outputs[i] = SutOutput::Error(std::string("engine: ") + e.what());
      }
    });
    report(end - start);
  }
  grid.cells_evaluated = evaluations.load();

  // (lower cell, upper cell, axis) per wall, in output order.
  struct WallSlot {
    uint64_t lower;
    uint64_t upper;
    size_t axis;
  };
  std::vector<WallSlot> slots;
  slots.reserve(wall_total);
  for (size_t axis = 0; axis < lattice.axis_count(); ++axis) {
    uint64_t last = lattice.cells_along(axis) - 1;
    for (uint64_t i = 0; i < lattice.cells(); ++i) {
      if (lattice.Position(i, axis) < last) {
        slots.push_back({i, i + lattice.linear_stride(axis), axis});
      }
    }
  }

  std::vector<MemoizedDistance> memos(threads, MemoizedDistance(d_out, 4096));
  grid.walls.resize(slots.size());
  for (size_t start = 0; start < slots.size(); start += kBatch) {
    size_t end = std::min(slots.size(), start + kBatch);
    ParallelFor(start, end, threads, [&](size_t w, size_t thread) {
      const auto& slot = slots[w];
      const SutOutput& oa = outputs[slot.lower];
      const SutOutput& ob = outputs[slot.upper];
      const Axis& axis = region.swept[slot.axis];
      double d = memos[thread].Between(oa, ob);
      grid.walls[w] = Wall{lattice.PointAt(slot.lower), lattice.PointAt(slot.upper),
                           axis.name, d, d / static_cast<double>(axis.stride),
                           oa.status, ob.status};
    });
    report(end - start);
  }
  return grid;
}

std::vector<Wall> TopWalls(const GridResult& grid, size_t k) {
  std::vector<size_t> order(grid.walls.size());
  std::iota(order.begin(), order.end(), size_t{0});
  size_t n = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<ptrdiff_t>(n),
                    order.end(), [&](size_t a, size_t b) {
                      double da = grid.walls[a].boundariness;
                      double db = grid.walls[b].boundariness;
                      return da != db ? da > db : a < b;
                    });
  std::vector<Wall> top;
  top.reserve(n);
  for (size_t i = 0; i < n; ++i) top.push_back(grid.walls[order[i]]);
  return top;
}

Region Refine(const Region& region, const InputPoint& focus, double zoom) {
  region.Validate();
  if (!(zoom > 0) || !std::isfinite(zoom)) {
    throw PreconditionError("zoom must be a positive finite number");
  }
  if (!region.Contains(focus)) {
    throw PreconditionError("focus " + focus.ToString() + " lies outside the region");
  }
  if (zoom == 1.0) return region;

  Region refined = region;
  for (auto& axis : refined.swept) {
    int64_t center = focus[focus.IndexOf(axis.name)];
    long double span = static_cast<long double>(axis.cells()) * axis.stride;
    long double stride = std::max<long double>(
        1, std::llroundl(static_cast<long double>(axis.stride) / zoom));
    stride = std::min<long double>(stride, static_cast<long double>(kMax));
    long double cells = std::max<long double>(1, std::floor(span / zoom / stride));
    // No window needs to be wider than the whole int64 range.
    cells = std::min<long double>(cells, std::ceil(0x1p65L / stride));
    auto new_stride = static_cast<Int128>(stride);
    auto below = static_cast<Int128>((cells - 1) / 2);
    auto count = static_cast<Int128>(cells);
    Int128 lo = static_cast<Int128>(center) - below * new_stride;
    Int128 hi = lo + (count - 1) * new_stride;
    axis.lo = Clamp(lo);
    axis.hi = Clamp(hi);
    axis.stride = static_cast<int64_t>(new_stride);
  }
  return refined;
}

}  // namespace boundex
