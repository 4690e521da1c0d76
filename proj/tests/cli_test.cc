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

// Runs the command line tool as a subprocess and checks exit codes and
// payloads.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "boundex/service.h"

namespace boundex {
namespace {

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun Cli(const std::string& args, const std::string& env = "") {
  std::string command = env + " " + BOUNDEX_CLI + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(command.c_str(), "r");
  CliRun run;
  if (pipe == nullptr) return run;
  std::array<char, 4096> buffer;
  size_t n;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    run.out.append(buffer.data(), n);
  }
  int status = ::pclose(pipe);
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

Json Parse(const CliRun& run) { return Json::parse(run.out); }

TEST(CliTest, Suts) {
  CliRun run = Cli("suts");
  EXPECT_EQ(run.exit_code, 0);
  EXPECT_EQ(run.out, Service().Suts().body + "\n");
}

TEST(CliTest, DetectExitCodes) {
  CliRun typemax = Cli("detect --sut julia-date --entrance typemax");
  EXPECT_EQ(typemax.exit_code, 0);
  EXPECT_EQ(Parse(typemax)["pair"].dump(),
            "[[252522163911150,10,7],[252522163911150,10,8]]");

  CliRun step = Cli("detect --sut step100 --entrance origin");
  EXPECT_EQ(step.exit_code, 0);
  EXPECT_EQ(Parse(step)["pair"].dump(), "[[99],[100]]");

  EXPECT_EQ(Cli("detect --sut const --entrance origin --max-steps 100").exit_code, 3);
  EXPECT_EQ(Cli("detect --sut const --e1 9223372036854775806 --e2 9223372036854775807 "
                "--warmup 2")
                .exit_code,
            4);
  EXPECT_EQ(Cli("detect --sut nope").exit_code, 2);
  EXPECT_EQ(Cli("detect --sut julia-date --entrance nope").exit_code, 2);
  EXPECT_EQ(Cli("detect --sut step100 --e1 0").exit_code, 2);
  EXPECT_EQ(Cli("detect --sut step100 --e1 0 --e2 x").exit_code, 2);
  EXPECT_EQ(Cli("detect").exit_code, 2);
  EXPECT_EQ(Cli("").exit_code, 2);
  EXPECT_EQ(Cli("frobnicate").exit_code, 2);
  EXPECT_EQ(Cli("detect --sut step100 --bogus").exit_code, 2);
  EXPECT_EQ(Cli("--help").exit_code, 0);
}

TEST(CliTest, ExplicitEntrance) {
  CliRun run = Cli("detect --sut julia-date --e1=-252522163911150,1,1 "
                "--e2=-252522163911151,12,31 --direction previous");
  EXPECT_EQ(run.exit_code, 0);
  EXPECT_EQ(Parse(run)["steps_taken"], 162);
}

TEST(CliTest, Scan) {
  CliRun csv = Cli("scan --sut julia-date --entrance typemax --steps 400 --format csv");
  ASSERT_EQ(csv.exit_code, 0);
  std::istringstream in(csv.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "step,x1,x2,o1_status,o1_text_hash,o2_status,o2_text_hash,d_out,derivative");
  int rows = 0, best_step = 0;
  double best = -1;
  while (std::getline(in, line) && !line.empty()) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream fields(line);
    for (std::string cell; std::getline(fields, cell, ',');) cells.push_back(cell);
    ASSERT_EQ(cells.size(), 9u);
    double d = std::stod(cells[7]);
    if (d > best) {
      best = d;
      best_step = std::stoi(cells[0]);
    }
  }
  EXPECT_EQ(rows, 400);
  EXPECT_EQ(best_step, 281);

  EXPECT_EQ(Cli("scan --sut julia-date --steps 0").exit_code, 2);
  EXPECT_EQ(Cli("scan --sut julia-date --steps 3 --format xml").exit_code, 2);

  CliRun flat = Cli("scan --sut const --steps 10");
  ASSERT_EQ(flat.exit_code, 0);
  Json samples = Parse(flat)["samples"];
  ASSERT_EQ(samples.size(), 10u);
  for (const auto& s : samples) EXPECT_EQ(s["d_out"], samples[0]["d_out"]);

  EXPECT_EQ(Cli("scan --sut const --e1 9223372036854775806 --e2 9223372036854775807 "
                "--steps 5")
                .exit_code,
            4);
}

TEST(CliTest, Grid) {
  CliRun month_grid = Cli("grid --sut julia-date --fix year=2019 --sweep month=1:12 --sweep day=1:32");
  ASSERT_EQ(month_grid.exit_code, 0);
  Json body = Parse(month_grid);
  EXPECT_EQ(body["walls"].size(), 724u);

  CliRun small = Cli("grid --sut julia-date --fix year=2020 --sweep month=1:2 --sweep day=1:2");
  EXPECT_EQ(Parse(small)["walls"].size(), 4u);

  const std::string month_grid_args =
      "grid --sut julia-date --fix year=2019 --sweep month=1:12 --sweep day=1:32";
  EXPECT_EQ(Cli("--budget 100 " + month_grid_args).exit_code, 5);
  EXPECT_EQ(Cli(month_grid_args, "BOUNDEX_BUDGET=100").exit_code, 5);
  // The flag beats the environment.
  EXPECT_EQ(Cli("--budget 1000 " + month_grid_args, "BOUNDEX_BUDGET=100").exit_code, 0);
  EXPECT_EQ(Cli("grid --sut julia-date --sweep month=1:12").exit_code, 2);
  EXPECT_EQ(Cli("grid --sut julia-date --sweep month=1").exit_code, 2);
}

TEST(CliTest, Refine) {
  CliRun run = Cli("refine --sweep day=1:32 --fix year=2019 --fix month=2 --focus day=8 --zoom 2");
  ASSERT_EQ(run.exit_code, 0);
  EXPECT_EQ(Parse(run)["region"]["sweep"][0]["hi"], 16);
  EXPECT_EQ(Cli("refine --sweep day=1:32 --focus day=99 --zoom 2").exit_code, 2);
}

TEST(CliTest, OutputFile) {
  auto path = std::filesystem::temp_directory_path() /
              ("boundex_cli_" + std::to_string(::getpid()) + ".json");
  CliRun run = Cli("detect --sut step100 -o " + path.string());
  EXPECT_EQ(run.exit_code, 0);
  EXPECT_TRUE(run.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  EXPECT_EQ(content.str(),
            Service().Detect(Json{{"v", 1}, {"sut", "step100"}}).body + "\n");
  // A grid written to disk can seed a refinement.
  auto grid_path = path;
  grid_path.replace_extension(".grid.json");
  ASSERT_EQ(Cli("grid --sut julia-date --fix year=2019 --sweep month=1:12 --sweep day=1:32 -o " +
                grid_path.string())
                .exit_code,
            0);
  CliRun refined = Cli("refine --region " + grid_path.string() +
                    " --focus month=2 --focus day=28 --zoom 4");
  EXPECT_EQ(refined.exit_code, 0);
  EXPECT_EQ(Parse(refined)["region"]["fix"]["year"], 2019);
  std::filesystem::remove(path);
  std::filesystem::remove(grid_path);
}

TEST(CliTest, ExternalWorker) {
  CliRun run = Cli(std::string("--worker '") + FAKE_WORKER +
                " echo' --dims a,b --workers 2 grid --sut external --sweep a=-2:2 "
                "--sweep b=0:3");
  ASSERT_EQ(run.exit_code, 0);
  Json body = Parse(run);
  EXPECT_EQ(body["sut"], "external");
  EXPECT_EQ(body["cells"], 20);
}

}  // namespace
}  // namespace boundex
