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

// HTTP front end over Service.
//
//   GET  /suts
//   POST /scan, /detect, /grid, /refine
//
// POST /grid with "stream": true answers with newline-delimited JSON:
// {"v":1,"progress":{"done","total"}} lines, then the usual grid body.

#ifndef BOUNDEX_HTTP_SERVER_H_
#define BOUNDEX_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "boundex/service.h"

namespace boundex {

class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port, or -1.
  int Bind(const std::string& host, int port);
  // Blocks until Stop(). Returns false if the socket failed.
  bool Listen();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace boundex

#endif  // BOUNDEX_HTTP_SERVER_H_
