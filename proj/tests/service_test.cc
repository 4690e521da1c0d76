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

#include <gtest/gtest.h>

#include <cstdlib>
#include <thread>

#include "boundex/http_server.h"
#include "httplib.h"

namespace boundex {
namespace {

Json Body(const Response& response) { return Json::parse(response.body); }

// Serializing a parsed payload reproduces it byte for byte.
void ExpectSchemaIdentity(const Response& response) {
  EXPECT_EQ(Json::parse(response.body).dump(), response.body);
}

TEST(ServiceTest, Suts) {
  Service service;
  Response response = service.Suts();
  EXPECT_EQ(response.http_status, 200);
  Json body = Body(response);
  ASSERT_TRUE(body.is_array());
  EXPECT_EQ(body[0].dump(),
            R"({"id":"julia-date","dims":["year","month","day"],"entrances":["typemax","typemin"]})");
}

TEST(ServiceTest, DetectTypemax) {
  Service service;
  Response response = service.Detect(Json{{"v", 1}, {"sut", "julia-date"}, {"entrance", "typemax"}});
  EXPECT_EQ(response.exit_code, kExitOk);
  Json body = Body(response);
  EXPECT_EQ(body["v"], 1);
  EXPECT_EQ(body["config"].dump(),
            R"({"sut":"julia-date","distance":"ncd","codec":"bzip2:9","k":3.0,"warmup":30,"epsilon":1e-09,"max_steps":1000000})");
  EXPECT_EQ(body["result"], "candidate");
  EXPECT_EQ(body["steps_taken"], 281);
  EXPECT_EQ(body["outputs"][1]["text"], "-252522163911150-6028347736506385-06");
  ExpectSchemaIdentity(response);
}

TEST(ServiceTest, DetectExitCodes) {
  Service service;
  Response step = service.Detect(Json{{"sut", "step100"}, {"entrance", "origin"}});
  EXPECT_EQ(step.exit_code, kExitOk);
  EXPECT_EQ(Body(step)["pair"].dump(), "[[99],[100]]");

  Response constant =
      service.Detect(Json{{"sut", "const"}, {"entrance", "origin"}, {"max_steps", 100}});
  EXPECT_EQ(constant.exit_code, kExitExhausted);
  EXPECT_EQ(Body(constant)["result"], "exhausted");

  Response end = service.Detect(
      Json{{"sut", "const"},
           {"entrance", Json{{"first", Json::array({9223372036854775806})},
                             {"second", Json::array({9223372036854775807LL})}}},
           {"warmup", 2}});
  EXPECT_EQ(end.exit_code, kExitRangeEnd);
  EXPECT_EQ(Body(end)["result"], "range_end");

  Response unknown_sut = service.Detect(Json{{"sut", "nope"}});
  EXPECT_EQ(unknown_sut.http_status, 404);
  EXPECT_EQ(unknown_sut.exit_code, kExitUsage);
  EXPECT_EQ(Body(unknown_sut)["error"]["code"], "unknown_sut");

  Response unknown_entrance =
      service.Detect(Json{{"sut", "julia-date"}, {"entrance", "nope"}});
  EXPECT_EQ(unknown_entrance.http_status, 400);
  EXPECT_EQ(unknown_entrance.exit_code, kExitUsage);

  Response bad_entrance = service.Detect(
      Json{{"sut", "step100"}, {"entrance", Json{{"first", Json::array({0})}, {"second", Json::array({5})}}}});
  EXPECT_EQ(bad_entrance.http_status, 400);

  Response bad_rule = service.Detect(Json{{"sut", "step100"}, {"k", -1}});
  EXPECT_EQ(bad_rule.http_status, 400);
  Response bad_version = service.Detect(Json{{"v", 2}, {"sut", "step100"}});
  EXPECT_EQ(bad_version.http_status, 400);
  Response bad_codec = service.Detect(Json{{"sut", "step100"}, {"codec", "lz4"}});
  EXPECT_EQ(bad_codec.http_status, 400);
}

TEST(ServiceTest, DetectWithExplicitEntranceAndCodec) {
  Service service;
  Response response = service.Detect(
      Json{{"sut", "step100"},
           {"entrance", Json{{"first", Json::array({200})}, {"second", Json::array({199})}, {"direction", "previous"}}},
           {"codec", "zlib:9"}});
  Json body = Body(response);
  EXPECT_EQ(body["config"]["codec"], "zlib:9");
  EXPECT_EQ(body["pair"].dump(), "[[100],[99]]");
  EXPECT_EQ(body["entrance"]["direction"], "previous");
}

TEST(ServiceTest, Scan) {
  Service service;
  Response zero = service.Scan(Json{{"sut", "const"}, {"steps", 0}});
  EXPECT_EQ(zero.http_status, 400);
  EXPECT_EQ(zero.exit_code, kExitUsage);

  Response flat = service.Scan(Json{{"sut", "const"}, {"steps", 10}});
  EXPECT_EQ(flat.exit_code, kExitOk);
  Json samples = Body(flat)["samples"];
  ASSERT_EQ(samples.size(), 10u);
  for (const auto& s : samples) EXPECT_EQ(s["d_out"], samples[0]["d_out"]);
  ExpectSchemaIdentity(flat);

  Response csv = service.Scan(
      Json{{"sut", "julia-date"}, {"entrance", "typemax"}, {"steps", 400}, {"format", "csv"}});
  EXPECT_EQ(csv.content_type, "text/csv");
  EXPECT_EQ(std::count(csv.body.begin(), csv.body.end(), '\n'), 401);

  Response truncated = service.Scan(
      Json{{"sut", "const"},
           {"entrance", Json{{"first", Json::array({9223372036854775806})},
                             {"second", Json::array({9223372036854775807LL})}}},
           {"steps", 5}});
  EXPECT_EQ(truncated.exit_code, kExitRangeEnd);
  EXPECT_TRUE(Body(truncated)["truncated"].get<bool>());
}

Json MonthGridRequest() {
  return Json::parse(R"({"v":1,"sut":"julia-date","region":{"sweep":[
      {"name":"month","lo":1,"hi":12},{"name":"day","lo":1,"hi":32}],"fix":{"year":2019}}})");
}

TEST(ServiceTest, Grid) {
  Service service;
  Response response = service.Grid(MonthGridRequest());
  EXPECT_EQ(response.exit_code, kExitOk);
  Json body = Body(response);
  EXPECT_EQ(body["cells"], 384);
  EXPECT_EQ(body["walls"].size(), 724u);
  EXPECT_EQ(body["config"]["sut"], "julia-date");
  ExpectSchemaIdentity(response);
  GridResult parsed = GridResultFromJson(body, {"year", "month", "day"});
  EXPECT_EQ(parsed.walls.size(), 724u);

  Json small = Json::parse(R"({"sut":"julia-date","region":{"sweep":[
      {"name":"month","lo":1,"hi":2},{"name":"day","lo":1,"hi":2}],"fix":{"year":2020}}})");
  EXPECT_EQ(Body(service.Grid(small))["walls"].size(), 4u);
}

TEST(ServiceTest, GridBudget) {
  ServiceOptions options;
  options.budget = 100;
  Service service(options);
  Response response = service.Grid(MonthGridRequest());
  EXPECT_EQ(response.http_status, 422);
  EXPECT_EQ(response.exit_code, kExitBudget);
  Json error = Body(response)["error"];
  EXPECT_EQ(error["code"], "budget_exceeded");
  EXPECT_EQ(error["required"], 384);
  EXPECT_EQ(error["allowed"], 100);
}

TEST(ServiceTest, GridBadRegion) {
  Service service;
  Response missing = service.Grid(Json{{"sut", "julia-date"}});
  EXPECT_EQ(missing.http_status, 400);
  Json unbound = MonthGridRequest();
  unbound["region"]["fix"] = Json::object();
  EXPECT_EQ(service.Grid(unbound).http_status, 400);
}

TEST(ServiceTest, Refine) {
  Service service;
  Json request = Json::parse(R"({"region":{"sweep":[{"name":"day","lo":1,"hi":32}],
      "fix":{"year":2019,"month":2}},"focus":{"day":8},"zoom":2})");
  Response response = service.Refine(request);
  EXPECT_EQ(response.http_status, 200);
  EXPECT_EQ(Body(response)["region"].dump(),
            R"({"sweep":[{"name":"day","lo":1,"hi":16,"stride":1}],"fix":{"year":2019,"month":2}})");
  request["focus"]["day"] = 99;
  EXPECT_EQ(service.Refine(request).http_status, 400);
  request["focus"] = Json::object();
  EXPECT_EQ(service.Refine(request).http_status, 400);
}

TEST(ServiceTest, Dispatch) {
  Service service;
  EXPECT_EQ(service.Dispatch("detect", "{not json").http_status, 400);
  EXPECT_EQ(service.Dispatch("explode", "{}").http_status, 404);
  EXPECT_EQ(service.Dispatch("detect", "[]").http_status, 400);
  EXPECT_EQ(service.Dispatch("detect", R"({"sut":"step100"})").exit_code, kExitOk);
}

TEST(ServiceTest, BudgetFromEnvironment) {
  ::setenv("BOUNDEX_BUDGET", "1234", 1);
  EXPECT_EQ(BudgetFromEnvironment(), 1234u);
  ::setenv("BOUNDEX_BUDGET", "12x", 1);
  EXPECT_EQ(BudgetFromEnvironment(), kDefaultCellBudget);
  ::unsetenv("BOUNDEX_BUDGET");
  EXPECT_EQ(BudgetFromEnvironment(), kDefaultCellBudget);
}

class HttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = std::make_unique<HttpServer>(service_);
    port_ = server_->Bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->Listen(); });
    server_->WaitUntilReady();
  }
  void TearDown() override {
    server_->Stop();
    thread_.join();
  }
  httplib::Client Client() { return httplib::Client("127.0.0.1", port_); }

  Service service_;
  std::unique_ptr<HttpServer> server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(HttpTest, Suts) {
  auto client = Client();
  auto res = client.Get("/suts");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, service_.Suts().body);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
}

TEST_F(HttpTest, DetectMatchesService) {
  auto client = Client();
  std::string request = R"({"v":1,"sut":"julia-date","entrance":"typemin"})";
  auto res = client.Post("/detect", request, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, service_.Dispatch("detect", request).body);
}

TEST_F(HttpTest, StatusCodes) {
  auto client = Client();
  EXPECT_EQ(client.Post("/detect", "{", "application/json")->status, 400);
  EXPECT_EQ(client.Post("/detect", R"({"sut":"nope"})", "application/json")->status, 404);
  EXPECT_EQ(client.Post("/scan", R"({"sut":"const","steps":0})", "application/json")->status,
            400);
  Json big = MonthGridRequest();
  big["region"]["sweep"][1]["hi"] = 100000;
  EXPECT_EQ(client.Post("/grid", big.dump(), "application/json")->status, 422);
  auto refine = client.Post(
      "/refine",
      R"({"region":{"sweep":[{"name":"x","lo":0,"hi":9}]},"focus":{"x":3},"zoom":1})",
      "application/json");
  EXPECT_EQ(refine->status, 200);
  EXPECT_EQ(client.Get("/nothing")->status, 404);
}

TEST_F(HttpTest, GridStreamsProgress) {
  auto client = Client();
  Json request = MonthGridRequest();
  request["stream"] = true;
  auto res = client.Post("/grid", request.dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/x-ndjson");
  std::vector<std::string> lines;
  std::stringstream in(res->body);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_GE(lines.size(), 2u);
  for (size_t i = 0; i + 1 < lines.size(); ++i) {
    EXPECT_TRUE(Json::parse(lines[i]).contains("progress"));
  }
  EXPECT_EQ(lines.back(), service_.Grid(MonthGridRequest()).body);
}

TEST_F(HttpTest, ConcurrentRequests) {
  std::vector<std::thread> threads;
  std::atomic<int> failures{0};
  std::string expected = service_.Dispatch("detect", R"({"sut":"step100"})").body;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&] {
      auto client = Client();
      auto res = client.Post("/detect", R"({"sut":"step100"})", "application/json");
      if (!res || res->body != expected) ++failures;
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(failures.load(), 0);
}

}  // namespace
}  // namespace boundex
