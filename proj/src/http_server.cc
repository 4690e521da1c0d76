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

#include "boundex/http_server.h"

#include "httplib.h"

namespace boundex {
namespace {

constexpr const char* kNdjson = "application/x-ndjson";

void Reply(httplib::Response& res, const Response& response) {
  res.status = response.http_status;
  res.set_content(response.body, response.content_type);
}

bool WantsStream(const std::string& body) {
  auto request = Json::parse(body, nullptr, /*allow_exceptions=*/false);
  return request.is_object() && request.contains("stream") &&
         request["stream"].is_boolean() && request["stream"].get<bool>();
}

}  // namespace

struct HttpServer::Impl {
  explicit Impl(const Service& s) : service(s) {}

  const Service& service;
  httplib::Server server;
};

HttpServer::HttpServer(const Service& service)
    : impl_(std::make_unique<Impl>(service)) {
  auto& server = impl_->server;
  const Service& svc = impl_->service;

  // The browser UI may be served from another origin.
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  server.Get("/suts", [&svc](const httplib::Request&, httplib::Response& res) {
    Reply(res, svc.Suts());
  });
  for (const char* op : {"scan", "detect", "refine"}) {
    std::string name = op;
    server.Post("/" + name, [&svc, name](const httplib::Request& req,
                                         httplib::Response& res) {
      Reply(res, svc.Dispatch(name, req.body));
    });
  }
  server.Post("/grid", [&svc](const httplib::Request& req, httplib::Response& res) {
    if (!WantsStream(req.body)) {
      Reply(res, svc.Dispatch("grid", req.body));
      return;
    }
    auto body = std::make_shared<std::string>(req.body);
    res.set_chunked_content_provider(
        kNdjson, [&svc, body](size_t, httplib::DataSink& sink) {
          auto progress = [&sink](uint64_t done, uint64_t total) {
            std::string line =
                Json{{"v", kSchemaVersion},
                     {"progress", Json{{"done", done}, {"total", total}}}}
                    .dump() +
                "\n";
            sink.write(line.data(), line.size());
          };
          Response response = svc.Grid(Json::parse(*body), progress);
          std::string last = response.body + "\n";
          sink.write(last.data(), last.size());
          sink.done();
          return true;
        });
  });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::Listen() { return impl_->server.listen_after_bind(); }

void HttpServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace boundex
