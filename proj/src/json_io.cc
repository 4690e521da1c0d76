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

#include "boundex/json_io.h"

#include "boundex/format.h"

namespace boundex {
namespace {

const Json& Field(const Json& json, const char* name) {
  if (!json.is_object() || !json.contains(name)) {
    throw std::invalid_argument(std::string("missing field '") + name + "'");
  }
  return json[name];
}

template <typename T>
T Get(const Json& json, const char* name) {
  try {
    return Field(json, name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("field '") + name +
                                "' has the wrong type");
  }
}

int64_t GetInt(const Json& json, const char* name) {
  const Json& value = Field(json, name);
  if (!value.is_number_integer()) {
    throw std::invalid_argument(std::string("field '") + name +
                                "' must be an integer");
  }
  return value.get<int64_t>();
}

std::vector<std::string> GenericDims(size_t n) {
  std::vector<std::string> dims;
  for (size_t i = 0; i < n; ++i) dims.push_back("d" + std::to_string(i));
  return dims;
}

Json StatsJson(const char* kind, const SearchStats& stats) {
  return Json{{"result", kind},
              {"steps_taken", stats.steps_taken},
              {"mean", RoundReal(stats.mean)},
              {"stddev", RoundReal(stats.stddev)},
              {"sut_evaluations", stats.sut_evaluations}};
}

SearchStats StatsFromJson(const Json& json) {
  return {Get<size_t>(json, "steps_taken"), Get<double>(json, "mean"),
          Get<double>(json, "stddev"), Get<size_t>(json, "sut_evaluations")};
}

}  // namespace

Json ToJson(const InputPoint& point) { return Json(point.coords()); }

Json ToJson(const SutOutput& output) {
  return Json{{"status", StatusName(output.status)}, {"text", output.text}};
}

Json ToJson(const Region& region) {
  Json sweep = Json::array();
  for (const auto& axis : region.swept) {
    sweep.push_back(Json{{"name", axis.name},
                         {"lo", axis.lo},
                         {"hi", axis.hi},
                         {"stride", axis.stride}});
  }
  Json fix = Json::object();
  for (const auto& binding : region.fixed) fix[binding.name] = binding.value;
  return Json{{"sweep", std::move(sweep)}, {"fix", std::move(fix)}};
}

Json ToJson(const Wall& wall) {
  Json json{{"a", ToJson(wall.a)},
            {"b", ToJson(wall.b)},
            {"axis", wall.axis},
            {"d", RoundReal(wall.boundariness)},
            {"sa", StatusName(wall.status_a)},
            {"sb", StatusName(wall.status_b)}};
  if (wall.derivative != wall.boundariness) {
    json["dd"] = RoundReal(wall.derivative);
  }
  return json;
}

Json ToJson(const SearchResult& result) {
  if (const auto* candidate = std::get_if<BoundaryCandidate>(&result)) {
    Json json = StatsJson("candidate", candidate->stats);
    json["pair"] = Json::array(
        {ToJson(candidate->pair.first), ToJson(candidate->pair.second)});
    json["outputs"] = Json::array(
        {ToJson(candidate->outputs.first), ToJson(candidate->outputs.second)});
    json["distance"] = RoundReal(candidate->distance);
    return json;
  }
  if (const auto* exhausted = std::get_if<Exhausted>(&result)) {
    return StatsJson("exhausted", exhausted->stats);
  }
  const auto& range_end = std::get<RangeEnd>(result);
  Json json = StatsJson("range_end", range_end.stats);
  json["last"] = ToJson(range_end.last);
  json["reason"] = range_end.reason;
  return json;
}

Json ToJson(const ScanTrace& trace) {
  Json samples = Json::array();
  for (const auto& s : trace.samples) {
    samples.push_back(Json{{"step", s.step},
                           {"x1", ToJson(s.x1)},
                           {"x2", ToJson(s.x2)},
                           {"o1", ToJson(s.o1)},
                           {"o2", ToJson(s.o2)},
                           {"d_in", RoundReal(s.d_in)},
                           {"d_out", RoundReal(s.d_out)},
                           {"derivative", RoundReal(s.derivative)}});
  }
  return Json{{"sut", trace.sut_id},
              {"distance", trace.d_out_id},
              {"input_distance", trace.d_in_id},
              {"codec", trace.codec_id},
              {"truncated", trace.truncated},
              {"reason", trace.reason},
              {"samples", std::move(samples)}};
}

Json ToJson(const GridResult& grid) {
  Json walls = Json::array();
  for (const auto& wall : grid.walls) walls.push_back(ToJson(wall));
  return Json{{"region", ToJson(grid.region)},
              {"sut", grid.sut_id},
              {"distance", grid.distance_id},
              {"codec", grid.codec_id},
              {"cells", grid.cells_evaluated},
              {"max_d", RoundReal(grid.MaxBoundariness())},
              {"walls", std::move(walls)}};
}

InputPoint InputPointFromJson(const Json& json,
                              const std::vector<std::string>& dims) {
  if (!json.is_array()) throw std::invalid_argument("point must be an array");
  std::vector<int64_t> coords;
  for (const auto& value : json) {
    if (!value.is_number_integer()) {
      throw std::invalid_argument("point coordinates must be integers");
    }
    coords.push_back(value.get<int64_t>());
  }
  if (coords.size() != dims.size()) {
    throw std::invalid_argument("point has " + std::to_string(coords.size()) +
                                " coordinates, expected " +
                                std::to_string(dims.size()));
  }
  return InputPoint(dims, std::move(coords));
}

SutOutput SutOutputFromJson(const Json& json) {
  return {ParseStatus(Get<std::string>(json, "status")),
          Get<std::string>(json, "text")};
}

Region RegionFromJson(const Json& json) {
  Region region;
  const Json& sweep = Field(json, "sweep");
  if (!sweep.is_array()) throw std::invalid_argument("'sweep' must be an array");
  for (const auto& axis : sweep) {
    Axis parsed{Get<std::string>(axis, "name"), GetInt(axis, "lo"),
                GetInt(axis, "hi"), 1};
    if (axis.contains("stride")) parsed.stride = GetInt(axis, "stride");
    region.swept.push_back(std::move(parsed));
  }
  if (json.contains("fix")) {
    const Json& fix = json["fix"];
    if (!fix.is_object()) throw std::invalid_argument("'fix' must be an object");
    for (const auto& [name, value] : fix.items()) {
      if (!value.is_number_integer()) {
        throw std::invalid_argument("fixed value of '" + name +
                                    "' must be an integer");
      }
      region.fixed.push_back({name, value.get<int64_t>()});
    }
  }
  try {
    region.Validate();
  } catch (const PreconditionError& e) {
    throw std::invalid_argument(e.what());
  }
  return region;
}

GridResult GridResultFromJson(const Json& json,
                              const std::vector<std::string>& dims) {
  GridResult grid;
  grid.region = RegionFromJson(Field(json, "region"));
  grid.sut_id = Get<std::string>(json, "sut");
  grid.distance_id = Get<std::string>(json, "distance");
  grid.codec_id = Get<std::string>(json, "codec");
  grid.cells_evaluated = Get<uint64_t>(json, "cells");
  std::vector<std::string> names = dims;
  if (names.empty()) {
    names = GenericDims(grid.region.swept.size() + grid.region.fixed.size());
  }
  for (const auto& wall : Field(json, "walls")) {
    Wall parsed{InputPointFromJson(Field(wall, "a"), names),
                InputPointFromJson(Field(wall, "b"), names),
                Get<std::string>(wall, "axis"),
                Get<double>(wall, "d"),
                Get<double>(wall, "d"),
                ParseStatus(Get<std::string>(wall, "sa")),
                ParseStatus(Get<std::string>(wall, "sb"))};
    if (wall.contains("dd")) parsed.derivative = Get<double>(wall, "dd");
    grid.walls.push_back(std::move(parsed));
  }
  return grid;
}

SearchResult SearchResultFromJson(const Json& json,
                                  const std::vector<std::string>& dims) {
  auto kind = Get<std::string>(json, "result");
  SearchStats stats = StatsFromJson(json);
  if (kind == "candidate") {
    const Json& pair = Field(json, "pair");
    const Json& outputs = Field(json, "outputs");
    if (!pair.is_array() || pair.size() != 2 || !outputs.is_array() ||
        outputs.size() != 2) {
      throw std::invalid_argument("candidate needs two points and two outputs");
    }
    return BoundaryCandidate{
        {InputPointFromJson(pair[0], dims), InputPointFromJson(pair[1], dims)},
        {SutOutputFromJson(outputs[0]), SutOutputFromJson(outputs[1])},
        Get<double>(json, "distance"),
        stats};
  }
  if (kind == "exhausted") return Exhausted{stats};
  if (kind == "range_end") {
    return RangeEnd{stats, InputPointFromJson(Field(json, "last"), dims),
                    Get<std::string>(json, "reason")};
  }
  throw std::invalid_argument("unknown result kind: " + kind);
}

ScanTrace ScanTraceFromJson(const Json& json, const std::vector<std::string>& dims) {
  ScanTrace trace;
  trace.sut_id = Get<std::string>(json, "sut");
  trace.d_out_id = Get<std::string>(json, "distance");
  trace.d_in_id = Get<std::string>(json, "input_distance");
  trace.codec_id = Get<std::string>(json, "codec");
  trace.truncated = Get<bool>(json, "truncated");
  trace.reason = Get<std::string>(json, "reason");
  for (const auto& s : Field(json, "samples")) {
    trace.samples.push_back(ScanSample{Get<size_t>(s, "step"),
                                       InputPointFromJson(Field(s, "x1"), dims),
                                       InputPointFromJson(Field(s, "x2"), dims),
                                       SutOutputFromJson(Field(s, "o1")),
                                       SutOutputFromJson(Field(s, "o2")),
                                       Get<double>(s, "d_in"),
                                       Get<double>(s, "d_out"),
                                       Get<double>(s, "derivative")});
  }
  return trace;
}

}  // namespace boundex
