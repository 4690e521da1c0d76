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

// Acceptance report: one PASS/FAIL line per criterion, then a summary.
// Exits non-zero when any criterion fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "boundex/detect.h"
#include "boundex/explore.h"
#include "boundex/http_server.h"
#include "boundex/julia_date.h"
#include "boundex/service.h"
#include "boundex/sut.h"
#include "httplib.h"
#include "test_util.h"

namespace boundex {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void Note(const std::string& what) {
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fixed(double value, int digits = 3) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

int failures = 0;

void Report(const std::string& name, const std::function<Verdict()>& body) {
  Verdict verdict;
  try {
    verdict = body();
  } catch (const std::exception& e) {
    verdict.pass = false;
    verdict.detail = std::string("exception: ") + e.what();
  }
  if (!verdict.pass) ++failures;
  std::printf("%s  %s  (%s)\n", verdict.pass ? "PASS" : "FAIL", name.c_str(),
              verdict.detail.c_str());
  std::fflush(stdout);
}

const DistanceFunction kNcd(DistanceKind::kNcd);

struct TableRow {
  int number;
  julia_date::Ymd input;
  Status status;
  const char* text;
};

// As printed, inputs and outputs verbatim.
const TableRow kTable[] = {
    {1, {252522163911149, 12, 31}, Status::kOk, "252522163911149-12-31"},
    {2, {252522163911150, 1, 1}, Status::kOk, "252522163911150-01-01"},
    {3, {252522163911150, 12, 31}, Status::kOk, "-252522163911150-6028347736506387-28"},
    {4, {252522163911151, 10, 7}, Status::kOk, "252522163911151-10-07"},
    {5, {252522163911151, 10, 8}, Status::kOk, "-252522163911150-6028347736506385-06"},
    {6, {-252522163911150, 1, 1}, Status::kOk, "-252522163911150-01-01"},
    {7, {-252522163911151, 12, 31}, Status::kOk, "-252522163911151-12-31"},
    {8, {-252522163911151, 7, 25}, Status::kOk, "-252522163911151-07-25"},
    {9, {-252522163911151, 7, 24}, Status::kOk, "252522163911150--6028347736506379--07"},
    {10, {2020, 12, 32}, Status::kError, "Day: 32 out of range (1:31)"},
    {11, {2020, 0, 31}, Status::kError, "Month: 0 out of range (1:12)"},
    {12, {9223372036854775807, 1, 1}, Status::kOk,
     "63131837319416-12056695473012772--7378697629483820630"},
};

const TableRow& Row(int number) { return kTable[number - 1]; }

Verdict DateTableGolden() {
  Verdict v;
  auto start = Clock::now();
  int matched = 0;
  for (const auto& row : kTable) {
    SutOutput out = julia_date::Construct(row.input);
    bool ok = out.status == row.status && out.text == row.text;
    matched += ok;
    v.Check(ok, "row " + std::to_string(row.number) + " got \"" + out.text + "\"");
  }
  double elapsed = Seconds(start);
  v.Check(elapsed < 1.0, "runtime " + Fixed(elapsed) + " s");
  v.Note(std::to_string(matched) + "/12 rows, " + Fixed(elapsed, 4) + " s");
  return v;
}

struct CountingSut : Sut {
  explicit CountingSut(std::unique_ptr<Sut> s) : inner(std::move(s)) {}
  const SutDescriptor& descriptor() const override { return inner->descriptor(); }
  const Stepper& stepper() const override { return inner->stepper(); }
  SutOutput Evaluate(const InputPoint& x) const override {
    ++calls;
    return inner->Evaluate(x);
  }
  std::unique_ptr<Sut> inner;
  mutable size_t calls = 0;
};

BoundaryCandidate SearchFrom(const std::string& entrance_name, size_t* calls,
                             double* elapsed) {
  CountingSut sut(MakeJuliaDateSut());
  const auto* named = sut.descriptor().FindEntrance(entrance_name);
  auto start = Clock::now();
  auto result = BdSearch(sut, sut.stepper(), named->direction, kNcd, named->entrance);
  *elapsed = Seconds(start);
  *calls = sut.calls;
  if (!std::holds_alternative<BoundaryCandidate>(result)) {
    throw std::runtime_error("search ended without a candidate");
  }
  return std::get<BoundaryCandidate>(result);
}

Verdict BdSearchCriterion(const std::string& entrance, const InputPoint& first,
                          const InputPoint& second, size_t steps,
                          const TableRow& row_first, const TableRow& row_second) {
  Verdict v;
  size_t calls = 0;
  double elapsed = 0;
  BoundaryCandidate c = SearchFrom(entrance, &calls, &elapsed);
  v.Check(c.pair.first == first && c.pair.second == second,
          "pair " + c.pair.first.ToString() + "," + c.pair.second.ToString() +
              " expected " + first.ToString() + "," + second.ToString());
  v.Check(c.stats.steps_taken == steps,
          "steps " + std::to_string(c.stats.steps_taken));
  v.Check(c.outputs.first.text == row_first.text,
          "first output \"" + c.outputs.first.text + "\" vs row " +
              std::to_string(row_first.number));
  v.Check(c.outputs.second.text == row_second.text,
          "second output \"" + c.outputs.second.text + "\" vs row " +
              std::to_string(row_second.number));
  v.Check(elapsed < 1.0, "runtime " + Fixed(elapsed) + " s");
  v.Check(calls <= steps + 2, std::to_string(calls) + " SUT calls");
  v.Note("step " + std::to_string(c.stats.steps_taken) + ", d=" +
         Fixed(c.distance, 4) + ", mean=" + Fixed(c.stats.mean, 4) + ", sd=" +
         Fixed(c.stats.stddev, 4) + ", " + std::to_string(calls) + " SUT calls, " +
         Fixed(elapsed, 4) + " s");
  return v;
}

Verdict CorrectedExtremes() {
  Verdict v;
  size_t calls;
  double elapsed;
  BoundaryCandidate top = SearchFrom("typemax", &calls, &elapsed);
  BoundaryCandidate bottom = SearchFrom("typemin", &calls, &elapsed);
  // The valid end of each candidate pair is the last date that round-trips.
  std::string max_text = top.outputs.first.text;
  std::string min_text = bottom.outputs.first.text;
  v.Check(max_text == "252522163911150-10-07", "typemax end \"" + max_text + "\"");
  v.Check(min_text == "-252522163911151-07-24", "typemin end \"" + min_text + "\"");
  v.Check(julia_date::RenderDate({top.pair.first[0], top.pair.first[1],
                                  top.pair.first[2]}) == max_text,
          "typemax end does not round-trip");
  v.Check(julia_date::RenderDate({bottom.pair.first[0], bottom.pair.first[1],
                                  bottom.pair.first[2]}) == min_text,
          "typemin end does not round-trip");
  v.Note("typemin " + min_text + ", typemax " + max_text);
  return v;
}

Verdict StepSutOracle() {
  Verdict v;
  testing::SplitMix64 rng(2019);
  auto start = Clock::now();
  int exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int64_t threshold = rng.Uniform(40, 100000);
    auto sut = MakeStepSut(threshold);
    Entrance origin{InputPoint({"x"}, {0}), InputPoint({"x"}, {1})};
    auto result = BdSearch(*sut, sut->stepper(), Direction::kNext, kNcd, origin);
    const auto* c = std::get_if<BoundaryCandidate>(&result);
    bool ok = c != nullptr && c->pair.first[0] == threshold - 1 &&
              c->pair.second[0] == threshold;
    exact += ok;
    v.Check(ok, "T=" + std::to_string(threshold));
  }
  double elapsed = Seconds(start);
  v.Check(elapsed < 10.0, "runtime " + Fixed(elapsed) + " s");
  v.Note(std::to_string(exact) + "/100 exact, " + Fixed(elapsed) + " s");
  return v;
}

Verdict RoundTrip() {
  Verdict v;
  auto start = Clock::now();
  uint64_t triples = 0, mismatches = 0;
  for (int64_t y = 1; y <= 9999; ++y) {
    for (unsigned m = 1; m <= 12; ++m) {
      unsigned days = testing::CivilDaysInMonth(y, m);
      for (unsigned d = 1; d <= days; ++d) {
        ++triples;
        int64_t rd = julia_date::TotalDays(y, m, d);
        julia_date::Ymd back = julia_date::RataToYmd(rd);
        if (rd != testing::CivilRataDie(y, m, d) || back.year != y ||
            back.month != static_cast<int64_t>(m) || back.day != static_cast<int64_t>(d)) {
          if (++mismatches <= 3) {
            v.Check(false, std::to_string(y) + "-" + std::to_string(m) + "-" +
                               std::to_string(d));
          }
        }
      }
    }
  }
  double elapsed = Seconds(start);
  v.Check(mismatches == 0, std::to_string(mismatches) + " mismatches");
  v.Check(elapsed < 60.0, "runtime " + Fixed(elapsed) + " s");
  v.Note(std::to_string(triples) + " triples, " + std::to_string(mismatches) +
         " mismatches, " + Fixed(elapsed) + " s");
  return v;
}

Verdict MonthEndContour() {
  Verdict v;
  auto start = Clock::now();
  auto sut = MakeJuliaDateSut();
  Region region{{{"month", 1, 12, 1}, {"day", 1, 32, 1}}, {{"year", 2019}}};
  GridResult grid = ComputeWalls(*sut, region, kNcd);
  double worst_margin = 1e9;
  for (int64_t m = 1; m <= 12; ++m) {
    int64_t last = testing::CivilDaysInMonth(2019, static_cast<unsigned>(m));
    double frontier = -1, interior = 0;
    for (const auto& wall : grid.walls) {
      if (wall.axis != "day" || wall.a[1] != m) continue;
      if (wall.a[2] == last) frontier = wall.boundariness;
      if (wall.status_a == Status::kOk && wall.status_b == Status::kOk) {
        interior = std::max(interior, wall.boundariness);
      }
    }
    worst_margin = std::min(worst_margin, frontier - interior);
    v.Check(frontier > interior, "month " + std::to_string(m) + " frontier " +
                                     Fixed(frontier, 4) + " <= " + Fixed(interior, 4));
  }
  double elapsed = Seconds(start);
  v.Check(elapsed < 30.0, "runtime " + Fixed(elapsed) + " s");
  v.Note("12 months, smallest frontier margin " + Fixed(worst_margin, 4) + ", " +
         std::to_string(grid.walls.size()) + " walls, " + Fixed(elapsed) + " s");
  return v;
}

struct NcdStats {
  double min = 1e9, max = -1e9, max_asym = 0, max_self = 0;
  int separation_failures = 0;
};

NcdStats NcdSuite(const Codec& codec) {
  NcdStats s;
  testing::SplitMix64 rng(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    std::string a = testing::RandomBlob(rng.Next(), rng.Uniform(10, 10000));
    std::string b = testing::RandomBlob(rng.Next(), rng.Uniform(100, 10000));
    if (a.size() < 100) a += testing::RandomBlob(rng.Next(), 100);
    double self = Ncd(a, a, codec);
    double ab = Ncd(a, b, codec), ba = Ncd(b, a, codec);
    s.min = std::min({s.min, self, ab, ba});
    s.max = std::max({s.max, self, ab, ba});
    s.max_asym = std::max(s.max_asym, std::abs(ab - ba));
    s.max_self = std::max(s.max_self, self);
    s.separation_failures += !(self < ab);
  }
  return s;
}

Verdict NcdProperties() {
  Verdict v;
  auto start = Clock::now();
  NcdStats s = NcdSuite(DefaultCodec());
  double elapsed = Seconds(start);
  v.Check(s.min >= 0 && s.max <= 1.25,
          "range [" + Fixed(s.min, 4) + ", " + Fixed(s.max, 4) + "]");
  v.Check(s.max_asym <= 0.05, "max asymmetry " + Fixed(s.max_asym, 4));
  v.Check(s.max_self <= 0.25, "self-distance floor: max ncd(a,a) " +
                                  Fixed(s.max_self, 4) + " > 0.25");
  v.Check(s.separation_failures == 0,
          std::to_string(s.separation_failures) + " separation failures");
  v.Check(elapsed < 30.0, "runtime " + Fixed(elapsed) + " s");
  v.Note(DefaultCodec().Id() + ", 1000 trials, range [" + Fixed(s.min, 4) + ", " +
         Fixed(s.max, 4) + "], max asymmetry " + Fixed(s.max_asym, 4) + ", " +
         Fixed(elapsed) + " s");

  NcdStats z = NcdSuite(Codec::Parse("zlib:9"));
  v.Note("zlib:9 reference: max ncd(a,a) " + Fixed(z.max_self, 4) + ", max " +
         Fixed(z.max, 4) + ", max asymmetry " + Fixed(z.max_asym, 4) + ", " +
         std::to_string(z.separation_failures) + " separation failures");
  return v;
}

size_t PeakStep(const std::string& entrance, size_t steps, bool* unique) {
  auto sut = MakeJuliaDateSut();
  const auto* named = sut->descriptor().FindEntrance(entrance);
  ScanTrace trace = Scan(*sut, sut->stepper(), named->direction, kNcd, named->entrance, steps);
  size_t best = 0;
  for (size_t i = 1; i < trace.samples.size(); ++i) {
    if (trace.samples[i].d_out > trace.samples[best].d_out) best = i;
  }
  *unique = true;
  for (size_t i = 0; i < trace.samples.size(); ++i) {
    if (i != best && trace.samples[i].d_out == trace.samples[best].d_out) *unique = false;
  }
  return trace.samples[best].step;
}

Verdict PeakLocations() {
  Verdict v;
  bool unique_max = false, unique_min = false;
  size_t top = PeakStep("typemax", 400, &unique_max);
  size_t bottom = PeakStep("typemin", 400, &unique_min);
  v.Check(top == 281 && unique_max, "typemax peak at " + std::to_string(top));
  v.Check(bottom == 162 && unique_min, "typemin peak at " + std::to_string(bottom));
  v.Note("absolute magnitudes not compared; unique 400-step scan maxima at " +
         std::to_string(top) + " (typemax) and " + std::to_string(bottom) + " (typemin)");
  return v;
}

std::string RunCli(const std::string& args, int* exit_code) {
  std::string command = std::string(BOUNDEX_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("cannot run " + command);
  std::string out;
  std::array<char, 4096> buffer;
  size_t n;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), n);
  int status = ::pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

Verdict CliHttpParity() {
  Verdict v;
  Service service;
  HttpServer server(service);
  int port = server.Bind("127.0.0.1", 0);
  if (port <= 0) throw std::runtime_error("cannot bind a port");
  std::thread listener([&] { server.Listen(); });
  server.WaitUntilReady();
  httplib::Client client("127.0.0.1", port);

  struct Case {
    std::string cli;
    std::string http;
  };
  const std::vector<Case> cases = {
      {"detect --sut julia-date --entrance typemax",
       R"({"v":1,"sut":"julia-date","entrance":"typemax"})"},
      {"detect --sut julia-date --entrance typemin",
       R"({"v":1,"sut":"julia-date","entrance":"typemin"})"},
      {"detect --sut step100 --entrance origin --k 2.5 --warmup 40",
       R"({"v":1,"sut":"step100","entrance":"origin","k":2.5,"warmup":40})"},
      {"detect --sut const --entrance origin --max-steps 100",
       R"({"v":1,"sut":"const","entrance":"origin","max_steps":100})"},
  };
  int identical = 0;
  for (const auto& c : cases) {
    int exit_code = -1;
    std::string cli = RunCli(c.cli, &exit_code);
    if (!cli.empty() && cli.back() == '\n') cli.pop_back();
    auto res = client.Post("/detect", c.http, "application/json");
    bool same = res && res->status == 200 && res->body == cli;
    identical += same;
    v.Check(same, "differs for '" + c.cli + "'");
  }
  server.Stop();
  listener.join();
  v.Note(std::to_string(identical) + "/" + std::to_string(cases.size()) +
         " detect payloads byte-identical; no UI involved");
  return v;
}

}  // namespace
}  // namespace boundex

int main() {
  using namespace boundex;
  Report("Date construction golden table", DateTableGolden);
  Report("BD typemax search", [] {
    return BdSearchCriterion("typemax", DatePoint(252522163911151, 10, 7),
                             DatePoint(252522163911151, 10, 8), 281, Row(4), Row(5));
  });
  Report("BD typemin search", [] {
    return BdSearchCriterion("typemin", DatePoint(-252522163911151, 7, 25),
                             DatePoint(-252522163911151, 7, 24), 162, Row(8), Row(9));
  });
  Report("Corrected extremes", CorrectedExtremes);
  Report("Step-SUT oracle", StepSutOracle);
  Report("Round-trip brute force", RoundTrip);
  Report("Month-end contour property", MonthEndContour);
  Report("NCD property suite", NcdProperties);
  Report("Peak locations replace absolute NCD magnitudes", PeakLocations);
  Report("CLI/HTTP parity", CliHttpParity);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
