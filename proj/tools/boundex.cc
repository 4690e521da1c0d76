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

// boundex: boundary value exploration from the command line.
//
//   boundex suts
//   boundex detect --sut julia-date --entrance typemax
//   boundex scan   --sut julia-date --entrance typemin --steps 400 --format csv
//   boundex grid   --sut julia-date --fix year=2000 --sweep month=0:13 --sweep day=0:32
//   boundex refine --region grid.json --focus month=2 --focus day=29 --zoom 4
//   boundex serve  --port 8080
//
// Prints the same payload the HTTP service returns for the same request.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "boundex/http_server.h"
#include "boundex/service.h"

namespace boundex {
namespace {

struct Flags {
  std::string sut;
  std::string entrance;
  std::string e1, e2, direction = "next";
  std::string distance = "ncd";
  std::string codec = DefaultCodec().Id();
  std::optional<double> k, epsilon;
  std::optional<size_t> warmup, max_steps;
  size_t steps = 0;
  std::string input_distance = "discrete";
  std::string format = "json";
  std::vector<std::string> sweeps, fixes, focus;
  std::string region_file;
  double zoom = 2;
  std::optional<uint64_t> budget;
  size_t threads = 0;
  std::string output;
  std::string host = "127.0.0.1";
  int port = 8080;
  // External SUT.
  std::string worker;
  std::string worker_dims;
  std::string worker_id = "external";
  size_t workers = 0;
  int64_t worker_timeout_ms = 5000;
};

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, sep);) parts.push_back(part);
  return parts;
}

int64_t ParseInt(const std::string& text, const std::string& what) {
  size_t used = 0;
  int64_t value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw CLI::ValidationError(what, "not an integer: '" + text + "'");
  }
  return value;
}

Json PointJson(const std::string& text) {
  Json point = Json::array();
  for (const auto& part : Split(text, ',')) point.push_back(ParseInt(part, "point"));
  return point;
}

// name=value
std::pair<std::string, int64_t> ParseBinding(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw CLI::ValidationError("binding", "expected name=value, got '" + text + "'");
  }
  return {text.substr(0, eq), ParseInt(text.substr(eq + 1), text)};
}

// name=lo:hi[:stride]
Json ParseSweep(const std::string& text) {
  auto eq = text.find('=');
  auto range = eq == std::string::npos ? std::vector<std::string>{}
                                       : Split(text.substr(eq + 1), ':');
  if (eq == 0 || range.size() < 2 || range.size() > 3) {
    throw CLI::ValidationError("--sweep", "expected name=lo:hi[:stride], got '" +
                                              text + "'");
  }
  Json axis{{"name", text.substr(0, eq)},
            {"lo", ParseInt(range[0], text)},
            {"hi", ParseInt(range[1], text)},
            {"stride", range.size() == 3 ? ParseInt(range[2], text) : 1}};
  return axis;
}

Json BaseRequest(const Flags& flags) {
  Json request{{"v", kSchemaVersion}, {"sut", flags.sut}};
  request["distance"] = flags.distance;
  request["codec"] = flags.codec;
  if (flags.k) request["k"] = *flags.k;
  if (flags.warmup) request["warmup"] = *flags.warmup;
  if (flags.epsilon) request["epsilon"] = *flags.epsilon;
  if (flags.max_steps) request["max_steps"] = *flags.max_steps;
  if (!flags.e1.empty() || !flags.e2.empty()) {
    if (flags.e1.empty() || flags.e2.empty()) {
      throw CLI::ValidationError("--e1/--e2", "both points are required");
    }
    request["entrance"] = Json{{"first", PointJson(flags.e1)},
                               {"second", PointJson(flags.e2)},
                               {"direction", flags.direction}};
  } else if (!flags.entrance.empty()) {
    request["entrance"] = flags.entrance;
  }
  return request;
}

Json RegionRequest(const Flags& flags) {
  if (!flags.region_file.empty()) {
    std::ifstream in(flags.region_file);
    if (!in) throw CLI::ValidationError("--region", "cannot read " + flags.region_file);
    Json doc = Json::parse(in);
    // Accept a bare region or any artifact that carries one.
    return doc.contains("region") ? doc["region"] : doc;
  }
  Json sweep = Json::array();
  for (const auto& s : flags.sweeps) sweep.push_back(ParseSweep(s));
  Json fix = Json::object();
  for (const auto& f : flags.fixes) {
    auto [name, value] = ParseBinding(f);
    fix[name] = value;
  }
  return Json{{"sweep", std::move(sweep)}, {"fix", std::move(fix)}};
}

int Emit(const Response& response, const std::string& output) {
  if (response.http_status != 200) {
    std::cerr << response.body << "\n";
    return response.exit_code;
  }
  if (output.empty() || output == "-") {
    std::cout << response.body << "\n";
  } else {
    std::ofstream out(output, std::ios::binary);
    out << response.body << "\n";
    if (!out) {
      std::cerr << "boundex: cannot write " << output << "\n";
      return kExitInternal;
    }
  }
  return response.exit_code;
}

void AddRunFlags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--sut", flags.sut, "SUT id")->required();
  cmd->add_option("--entrance", flags.entrance, "named entrance pair");
  cmd->add_option("--e1", flags.e1, "explicit entrance, first point (a,b,...)");
  cmd->add_option("--e2", flags.e2, "explicit entrance, second point");
  cmd->add_option("--direction", flags.direction, "next or previous")
      ->check(CLI::IsMember({"next", "previous"}));
  cmd->add_option("--distance", flags.distance, "output distance");
  cmd->add_option("--codec", flags.codec, "NCD compressor, e.g. bzip2:9");
  cmd->add_option("--k", flags.k, "outlier threshold in standard deviations");
  cmd->add_option("--warmup", flags.warmup, "pairs before the test is armed");
  cmd->add_option("--epsilon", flags.epsilon, "minimum absolute excess");
  cmd->add_option("--max-steps", flags.max_steps, "search budget");
  cmd->add_option("-o,--output", flags.output, "write the payload here");
}

void AddRegionFlags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--sweep", flags.sweeps, "name=lo:hi[:stride], repeatable");
  cmd->add_option("--fix", flags.fixes, "name=value, repeatable");
}

int Main(int argc, char** argv) {
  CLI::App app{"Boundary value exploration"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--worker", flags.worker,
                 "serve an external SUT through this command");
  app.add_option("--dims", flags.worker_dims, "external SUT dimensions (a,b,...)");
  app.add_option("--worker-id", flags.worker_id, "external SUT id");
  app.add_option("--workers", flags.workers, "external worker processes");
  app.add_option("--worker-timeout-ms", flags.worker_timeout_ms,
                 "per-call timeout");
  app.add_option("--budget", flags.budget,
                 "grid cell budget (default: $BOUNDEX_BUDGET or 100000)");
  app.add_option("--threads", flags.threads, "grid threads (0 = all cores)");

  auto* suts = app.add_subcommand("suts", "list SUTs");
  auto* detect = app.add_subcommand("detect", "search for a boundary candidate");
  AddRunFlags(detect, flags);
  auto* scan = app.add_subcommand("scan", "trace program derivatives");
  AddRunFlags(scan, flags);
  scan->add_option("--steps", flags.steps, "pairs to trace")->required();
  scan->add_option("--input-distance", flags.input_distance, "input distance");
  scan->add_option("--format", flags.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  auto* grid = app.add_subcommand("grid", "boundariness walls over a lattice");
  grid->add_option("--sut", flags.sut, "SUT id")->required();
  grid->add_option("--distance", flags.distance, "output distance");
  grid->add_option("--codec", flags.codec, "NCD compressor");
  grid->add_option("-o,--output", flags.output, "write the payload here");
  AddRegionFlags(grid, flags);
  auto* refine = app.add_subcommand("refine", "zoom a region around a point");
  refine->add_option("--region", flags.region_file, "JSON file with a region");
  AddRegionFlags(refine, flags);
  refine->add_option("--focus", flags.focus, "name=value, repeatable")->required();
  refine->add_option("--zoom", flags.zoom, "zoom factor")->required();
  refine->add_option("-o,--output", flags.output, "write the payload here");
  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--host", flags.host, "bind address");
  serve->add_option("--port", flags.port, "port, 0 for any");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    ServiceOptions options;
    options.budget = flags.budget ? *flags.budget : BudgetFromEnvironment();
    options.grid_threads = flags.threads;
    if (!flags.worker.empty()) {
      ExternalSutOptions external;
      external.command = flags.worker;
      external.dims = Split(flags.worker_dims, ',');
      external.id = flags.worker_id;
      external.workers = flags.workers;
      external.timeout = std::chrono::milliseconds(flags.worker_timeout_ms);
      options.external = external;
    }
    Service service(options);

    if (*suts) return Emit(service.Suts(), "");
    if (*detect) return Emit(service.Detect(BaseRequest(flags)), flags.output);
    if (*scan) {
      Json request = BaseRequest(flags);
      request["steps"] = flags.steps;
      request["input_distance"] = flags.input_distance;
      request["format"] = flags.format;
      return Emit(service.Scan(request), flags.output);
    }
    if (*grid) {
      Json request{{"v", kSchemaVersion},
                   {"sut", flags.sut},
                   {"distance", flags.distance},
                   {"codec", flags.codec},
                   {"region", RegionRequest(flags)}};
      return Emit(service.Grid(request), flags.output);
    }
    if (*refine) {
      Json focus = Json::object();
      for (const auto& f : flags.focus) {
        auto [name, value] = ParseBinding(f);
        focus[name] = value;
      }
      Json request{{"v", kSchemaVersion},
                   {"region", RegionRequest(flags)},
                   {"focus", std::move(focus)},
                   {"zoom", flags.zoom}};
      return Emit(service.Refine(request), flags.output);
    }
    HttpServer server(service);
    int port = server.Bind(flags.host, flags.port);
    if (port < 0) {
      std::cerr << "boundex: cannot bind " << flags.host << ":" << flags.port << "\n";
      return kExitInternal;
    }
    std::cerr << "boundex: listening on http://" << flags.host << ":" << port << "\n";
    return server.Listen() ? kExitOk : kExitInternal;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "boundex: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "boundex: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "boundex: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace
}  // namespace boundex

int main(int argc, char** argv) { return boundex::Main(argc, argv); }
