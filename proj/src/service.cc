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

#include "boundex/service.h"

#include <charconv>
#include <cstdlib>

#include "boundex/format.h"

namespace boundex {
namespace {

struct ServiceError {
  int http_status;
  int exit_code;
  std::string code;
  std::string message;
  Json details = Json::object();
};

ServiceError BadRequest(std::string message) {
  return {400, kExitUsage, "bad_request", std::move(message)};
}

Response ErrorResponse(const ServiceError& error) {
  Json body{{"v", kSchemaVersion},
            {"error", Json{{"code", error.code}, {"message", error.message}}}};
  for (const auto& [key, value] : error.details.items()) body["error"][key] = value;
  return {error.http_status, error.exit_code, body.dump(), "application/json"};
}

Response JsonResponse(const Json& body, int exit_code) {
  return {200, exit_code, body.dump(), "application/json"};
}

// Runs `handler`, mapping every failure to an error response.
template <typename Handler>
Response Guarded(Handler&& handler) {
  try {
    return handler();
  } catch (const ServiceError& error) {
    return ErrorResponse(error);
  } catch (const BudgetExceeded& e) {
    ServiceError error{422, kExitBudget, "budget_exceeded", e.what()};
    error.details = Json{{"required", e.required()}, {"allowed", e.allowed()}};
    return ErrorResponse(error);
  } catch (const std::invalid_argument& e) {  // includes PreconditionError
    return ErrorResponse(BadRequest(e.what()));
  } catch (const std::exception& e) {
    return ErrorResponse({500, kExitInternal, "internal", e.what()});
  }
}

void CheckVersion(const Json& request) {
  if (!request.is_object()) throw BadRequest("request must be a JSON object");
  if (request.contains("v") &&
      (!request["v"].is_number_integer() || request["v"].get<int>() != kSchemaVersion)) {
    throw BadRequest("unsupported schema version");
  }
}

template <typename T>
T Optional(const Json& request, const char* name, T fallback) {
  if (!request.contains(name)) return fallback;
  try {
    return request[name].get<T>();
  } catch (const nlohmann::json::exception&) {
    throw BadRequest(std::string("field '") + name + "' has the wrong type");
  }
}

struct ResolvedEntrance {
  Entrance entrance;
  Direction direction;
  std::string name;  // empty for explicit entrances
};

ResolvedEntrance ResolveEntrance(const Sut& sut, const Json& request) {
  const auto& descriptor = sut.descriptor();
  if (!request.contains("entrance")) {
    if (descriptor.entrances.empty()) {
      throw BadRequest("SUT " + sut.id() + " has no named entrance; pass one");
    }
    const auto& first = descriptor.entrances.front();
    return {first.entrance, first.direction, first.name};
  }
  const Json& spec = request["entrance"];
  if (spec.is_string()) {
    const auto* named = descriptor.FindEntrance(spec.get<std::string>());
    if (named == nullptr) {
      throw ServiceError{400, kExitUsage, "unknown_entrance",
                         "SUT " + sut.id() + " has no entrance '" +
                             spec.get<std::string>() + "'"};
    }
    return {named->entrance, named->direction, named->name};
  }
  if (!spec.is_object() || !spec.contains("first") || !spec.contains("second")) {
    throw BadRequest("entrance must be a name or {\"first\", \"second\"}");
  }
  auto dims = descriptor.DimNames();
  ResolvedEntrance resolved{
      {InputPointFromJson(spec["first"], dims),
       InputPointFromJson(spec["second"], dims)},
      ParseDirection(Optional<std::string>(spec, "direction", "next")),
      ""};
  ValidateEntrance(sut, resolved.entrance, resolved.direction);
  return resolved;
}

Json EntranceJson(const ResolvedEntrance& entrance) {
  Json json = Json::object();
  if (!entrance.name.empty()) json["name"] = entrance.name;
  json["first"] = ToJson(entrance.entrance.first);
  json["second"] = ToJson(entrance.entrance.second);
  json["direction"] = DirectionName(entrance.direction);
  return json;
}

void Append(Json& target, const Json& fields) {
  for (const auto& [key, value] : fields.items()) target[key] = value;
}

// Single Stepper-owning SUT wrapper so built-ins and the shared external
// instance can be handled uniformly.
std::shared_ptr<const Sut> Own(std::unique_ptr<Sut> sut) {
  return std::shared_ptr<const Sut>(std::move(sut));
}

}  // namespace

RunConfig RunConfig::FromRequest(const Json& request) {
  RunConfig config;
  if (!request.contains("sut") || !request["sut"].is_string()) {
    throw BadRequest("field 'sut' is required");
  }
  config.sut = request["sut"].get<std::string>();
  auto distance = Optional<std::string>(request, "distance", "ncd");
  auto codec = Optional<std::string>(request, "codec", DefaultCodec().Id());
  config.distance = DistanceFunction::Parse(distance);
  if (config.distance.kind() == DistanceKind::kNcd && distance == "ncd") {
    config.distance = DistanceFunction(DistanceKind::kNcd, Codec::Parse(codec));
  }
  config.rule.k = Optional<double>(request, "k", config.rule.k);
  config.rule.warmup = Optional<size_t>(request, "warmup", config.rule.warmup);
  config.rule.epsilon = Optional<double>(request, "epsilon", config.rule.epsilon);
  config.max_steps = Optional<size_t>(request, "max_steps", config.max_steps);
  config.rule.Validate();
  return config;
}

Json RunConfig::ToJson() const {
  return Json{{"sut", sut},
              {"distance", distance.Name()},
              {"codec", distance.codec().Id()},
              {"k", RoundReal(rule.k)},
              {"warmup", rule.warmup},
              {"epsilon", RoundReal(rule.epsilon)},
              {"max_steps", max_steps}};
}

uint64_t BudgetFromEnvironment() {
  const char* value = std::getenv("BOUNDEX_BUDGET");
  if (value == nullptr) return kDefaultCellBudget;
  std::string_view text(value);
  uint64_t budget = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), budget);
  if (ec != std::errc() || ptr != text.data() + text.size() || budget == 0) {
    return kDefaultCellBudget;
  }
  return budget;
}

Service::Service(ServiceOptions options) : options_(std::move(options)) {
  if (options_.external) {
    external_ = std::make_shared<ExternalSut>(*options_.external);
  }
}

std::shared_ptr<const Sut> Service::FindSut(const std::string& id) const {
  if (external_ && id == external_->id()) return external_;
  if (auto sut = MakeBuiltinSut(id)) return Own(std::move(sut));
  throw ServiceError{404, kExitUsage, "unknown_sut", "unknown SUT '" + id + "'"};
}

Response Service::Suts() const {
  Json list = Json::array();
  auto describe = [&](const Sut& sut) {
    Json entrances = Json::array();
    for (const auto& entrance : sut.descriptor().entrances) {
      entrances.push_back(entrance.name);
    }
    list.push_back(Json{{"id", sut.id()},
                        {"dims", sut.descriptor().DimNames()},
                        {"entrances", std::move(entrances)}});
  };
  for (const auto& id : BuiltinSutIds()) describe(*MakeBuiltinSut(id));
  if (external_) describe(*external_);
  return JsonResponse(list, kExitOk);
}

Response Service::Detect(const Json& request) const {
  return Guarded([&] {
    CheckVersion(request);
    RunConfig config = RunConfig::FromRequest(request);
    auto sut = FindSut(config.sut);
    ResolvedEntrance entrance = ResolveEntrance(*sut, request);
    SearchResult result = BdSearch(*sut, sut->stepper(), entrance.direction,
                                   config.distance, entrance.entrance,
                                   config.rule, config.max_steps);
    Json body{{"v", kSchemaVersion},
              {"config", config.ToJson()},
              {"entrance", EntranceJson(entrance)}};
    Append(body, ToJson(result));
    int exit_code = std::holds_alternative<BoundaryCandidate>(result) ? kExitOk
                    : std::holds_alternative<Exhausted>(result)       ? kExitExhausted
                                                                      : kExitRangeEnd;
    return JsonResponse(body, exit_code);
  });
}

Response Service::Scan(const Json& request) const {
  return Guarded([&] {
    CheckVersion(request);
    RunConfig config = RunConfig::FromRequest(request);
    if (!request.contains("steps") || !request["steps"].is_number_integer() ||
        request["steps"].get<int64_t>() < 1) {
      throw BadRequest("field 'steps' must be a positive integer");
    }
    auto steps = request["steps"].get<size_t>();
    auto d_in = DistanceFunction::Parse(
        Optional<std::string>(request, "input_distance", "discrete"));
    auto format = Optional<std::string>(request, "format", "json");
    if (format != "json" && format != "csv") {
      throw BadRequest("format must be json or csv");
    }
    auto sut = FindSut(config.sut);
    ResolvedEntrance entrance = ResolveEntrance(*sut, request);
    ScanTrace trace = boundex::Scan(*sut, sut->stepper(), entrance.direction,
                                    config.distance, entrance.entrance, steps, d_in);
    int exit_code = trace.truncated ? kExitRangeEnd : kExitOk;
    if (format == "csv") {
      return Response{200, exit_code, ScanTraceToCsv(trace), "text/csv"};
    }
    Json body{{"v", kSchemaVersion},
              {"config", config.ToJson()},
              {"entrance", EntranceJson(entrance)}};
    Append(body, ToJson(trace));
    return JsonResponse(body, exit_code);
  });
}

Response Service::Grid(const Json& request,
                       const std::function<void(uint64_t, uint64_t)>& progress) const {
  return Guarded([&] {
    CheckVersion(request);
    RunConfig config = RunConfig::FromRequest(request);
    if (!request.contains("region")) throw BadRequest("field 'region' is required");
    Region region = RegionFromJson(request["region"]);
    auto sut = FindSut(config.sut);
    GridOptions options{options_.budget, options_.grid_threads, progress};
    GridResult grid = ComputeWalls(*sut, region, config.distance, options);
    Json body{{"v", kSchemaVersion}, {"config", config.ToJson()}};
    Append(body, ToJson(grid));
    return JsonResponse(body, kExitOk);
  });
}

Response Service::Refine(const Json& request) const {
  return Guarded([&] {
    CheckVersion(request);
    if (!request.contains("region")) throw BadRequest("field 'region' is required");
    Region region = RegionFromJson(request["region"]);
    if (!request.contains("focus") || !request["focus"].is_object()) {
      throw BadRequest("field 'focus' must be an object of coordinates");
    }
    if (!request.contains("zoom") || !request["zoom"].is_number()) {
      throw BadRequest("field 'zoom' must be a number");
    }
    const Json& focus_json = request["focus"];
    std::vector<std::string> dims;
    std::vector<int64_t> coords;
    for (const auto& axis : region.swept) {
      if (!focus_json.contains(axis.name) ||
          !focus_json[axis.name].is_number_integer()) {
        throw BadRequest("focus needs an integer for '" + axis.name + "'");
      }
      dims.push_back(axis.name);
      coords.push_back(focus_json[axis.name].get<int64_t>());
    }
    for (const auto& binding : region.fixed) {
      dims.push_back(binding.name);
      coords.push_back(Optional<int64_t>(focus_json, binding.name.c_str(),
                                         binding.value));
    }
    Region refined = boundex::Refine(region, InputPoint(dims, coords),
                                     request["zoom"].get<double>());
    return JsonResponse(Json{{"v", kSchemaVersion}, {"region", ToJson(refined)}},
                        kExitOk);
  });
}

Response Service::Dispatch(const std::string& operation,
                           const std::string& body) const {
  Json request;
  try {
    request = Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    return ErrorResponse(BadRequest(std::string("malformed JSON: ") + e.what()));
  }
  if (operation == "detect") return Detect(request);
  if (operation == "scan") return Scan(request);
  if (operation == "grid") return Grid(request);
  if (operation == "refine") return Refine(request);
  return ErrorResponse({404, kExitUsage, "unknown_operation",
                        "unknown operation '" + operation + "'"});
}

}  // namespace boundex
