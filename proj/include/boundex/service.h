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

// Request handling shared by the command line and the HTTP service.
//
// Both front ends turn their arguments into the same versioned JSON request
// and hand it to Service; the CLI prints the body and exits with exit_code,
// the server replies with http_status. Identical requests therefore produce
// byte-identical payloads on both paths.
//
// Requests (all accept "v": 1):
//   detect: {"sut", "entrance": <name> | {"first", "second", "direction"?},
//            "distance"?, "codec"?, "k"?, "warmup"?, "epsilon"?, "max_steps"?}
//   scan:   detect fields + {"steps", "input_distance"?}
//   grid:   {"sut", "region", "distance"?, "codec"?}
//   refine: {"region", "focus": {dim: value, ...}, "zoom"}
// Every response carries "v" and, except /suts and /refine, "config".
// Failures return {"v": 1, "error": {"code", "message"}}.

#ifndef BOUNDEX_SERVICE_H_
#define BOUNDEX_SERVICE_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "boundex/external_sut.h"
#include "boundex/json_io.h"

namespace boundex {

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitExhausted = 3;
inline constexpr int kExitRangeEnd = 4;
inline constexpr int kExitBudget = 5;
inline constexpr int kExitInternal = 1;

// The parameters every exported artifact embeds.
struct RunConfig {
  std::string sut;
  DistanceFunction distance;
  OutlierRule rule;
  size_t max_steps = kDefaultMaxSteps;

  // Reads "sut", "distance", "codec", "k", "warmup", "epsilon", "max_steps";
  // absent fields keep their defaults. Throws std::invalid_argument.
  static RunConfig FromRequest(const Json& request);
  // {"sut", "distance", "codec", "k", "warmup", "epsilon", "max_steps"}
  Json ToJson() const;
};

struct Response {
  int http_status = 200;
  int exit_code = kExitOk;
  std::string body;  // JSON, or CSV for scans requested with "format": "csv"
  std::string content_type = "application/json";
};

struct ServiceOptions {
  uint64_t budget = kDefaultCellBudget;
  size_t grid_threads = 0;
  // Serves SUT id options.id through worker processes when set.
  std::optional<ExternalSutOptions> external;
};

// BOUNDEX_BUDGET if set to a positive integer, else kDefaultCellBudget.
uint64_t BudgetFromEnvironment();

class Service {
 public:
  explicit Service(ServiceOptions options = {});

  Response Suts() const;
  Response Detect(const Json& request) const;
  Response Scan(const Json& request) const;
  Response Grid(const Json& request,
                const std::function<void(uint64_t, uint64_t)>& progress = {}) const;
  Response Refine(const Json& request) const;

  // Parses `body`; malformed JSON becomes a 400 response.
  Response Dispatch(const std::string& operation, const std::string& body) const;

  const ServiceOptions& options() const { return options_; }

 private:
  // Borrowed for the external SUT, owned otherwise.
  std::shared_ptr<const Sut> FindSut(const std::string& id) const;

  ServiceOptions options_;
  std::shared_ptr<ExternalSut> external_;
};

}  // namespace boundex

#endif  // BOUNDEX_SERVICE_H_
