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

#include "boundex/external_sut.h"

#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <filesystem>

#include "boundex/detect.h"
#include "boundex/explore.h"

namespace boundex {
namespace {

ExternalSutOptions Options(const std::string& mode, size_t workers = 2) {
  ExternalSutOptions options;
  options.command = std::string(FAKE_WORKER) + " " + mode;
  options.dims = {"a", "b"};
  options.workers = workers;
  options.timeout = std::chrono::milliseconds(2000);
  return options;
}

InputPoint Point(int64_t a, int64_t b) { return InputPoint({"a", "b"}, {a, b}); }

TEST(ExternalSutTest, Echo) {
  ExternalSut sut(Options("echo"));
  EXPECT_EQ(sut.id(), "external");
  EXPECT_EQ(sut.descriptor().DimNames(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(sut.pool_size(), 2u);
  EXPECT_EQ(sut.Evaluate(Point(2020, 29)), SutOutput::Ok("2020-29"));
  EXPECT_EQ(sut.Evaluate(Point(-1, 5)), SutOutput::Error("-1-5"));
  for (int i = 0; i < 50; ++i) {
    ASSERT_EQ(sut.Evaluate(Point(i, i)).text, std::to_string(i) + "-" + std::to_string(i));
  }
}

TEST(ExternalSutTest, CrashBecomesErrorOutput) {
  ExternalSut sut(Options("crash13", 1));
  EXPECT_EQ(sut.Evaluate(Point(13, 0)), SutOutput::Error("adapter: worker terminated"));
  // The worker restarts for the next call.
  EXPECT_EQ(sut.Evaluate(Point(12, 0)), SutOutput::Ok("12-0"));
}

TEST(ExternalSutTest, RetriesOnceAfterCrash) {
  auto marker = std::filesystem::temp_directory_path() /
                ("boundex_crash_once_" + std::to_string(::getpid()));
  std::filesystem::remove(marker);
  ExternalSut sut(Options("crash-once " + marker.string(), 1));
  EXPECT_EQ(sut.Evaluate(Point(1, 2)), SutOutput::Ok("1-2"));
  EXPECT_TRUE(std::filesystem::exists(marker));
  std::filesystem::remove(marker);
}

TEST(ExternalSutTest, Timeout) {
  auto options = Options("sleep7", 1);
  options.timeout = std::chrono::milliseconds(200);
  ExternalSut sut(options);
  auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(sut.Evaluate(Point(7, 0)), SutOutput::Error("adapter: timeout"));
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(5));
  EXPECT_EQ(sut.Evaluate(Point(8, 0)), SutOutput::Ok("8-0"));
}

TEST(ExternalSutTest, ProtocolErrors) {
  for (const char* mode : {"bad-json", "wrong-id", "bad-status"}) {
    ExternalSut sut(Options(mode, 1));
    EXPECT_THROW(sut.Evaluate(Point(1, 1)), ProtocolError) << mode;
  }
}

TEST(ExternalSutTest, MissingCommand) {
  EXPECT_EQ(ExternalSut(Options("echo")).stepper().Id(), "unit");
  ExternalSutOptions options = Options("echo");
  options.command.clear();
  EXPECT_THROW(ExternalSut{options}, PreconditionError);
  options = Options("echo");
  options.dims.clear();
  EXPECT_THROW(ExternalSut{options}, PreconditionError);
}

TEST(ExternalSutTest, ShellCommandThatExits) {
  ExternalSutOptions options = Options("echo", 1);
  options.command = "exit 0";
  ExternalSut sut(options);
  EXPECT_EQ(sut.Evaluate(Point(1, 1)), SutOutput::Error("adapter: worker terminated"));
}

TEST(ExternalSutTest, GridThroughPool) {
  ExternalSut sut(Options("echo", 4));
  Region region{{{"a", -3, 6, 1}, {"b", 0, 9, 1}}, {}};
  GridResult grid = ComputeWalls(sut, region, DistanceFunction(DistanceKind::kNcd),
                                 GridOptions{kDefaultCellBudget, 8, {}});
  EXPECT_EQ(grid.cells_evaluated, 100u);
  EXPECT_EQ(grid.walls.size(), region.WallCount());
  for (const auto& wall : grid.walls) {
    EXPECT_EQ(wall.status_a == Status::kError, wall.a[0] < 0);
  }
}

TEST(ExternalSutTest, SearchAlongLastAxis) {
  ExternalSut sut(Options("echo", 1));
  Entrance entrance{Point(5, 0), Point(5, 1)};
  auto result = BdSearch(sut, sut.stepper(), Direction::kNext,
                         DistanceFunction(DistanceKind::kNcd), entrance,
                         OutlierRule{}, 40);
  EXPECT_EQ(StatsOf(result).sut_evaluations, StatsOf(result).steps_taken + 1);
}

}  // namespace
}  // namespace boundex
