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

// A scriptable worker for the external SUT tests. Speaks the JSONL protocol
// on stdin/stdout; argv[1] selects a misbehaviour.
//
//   echo        output is the coordinates joined by '-', error if x0 < 0
//   crash13     exits without answering when x0 == 13
//   crash-once  exits on its first request if argv[2] does not exist yet
//   sleep7      never answers when x0 == 7
//   bad-json    answers with garbage
//   wrong-id    answers with a shifted id
//   bad-status  answers with an unknown status

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "json.hpp"

int main(int argc, char** argv) {
  std::string mode = argc > 1 ? argv[1] : "echo";
  std::string line;
  while (std::getline(std::cin, line)) {
    auto request = nlohmann::json::parse(line);
    uint64_t id = request["id"];
    const auto& input = request["input"];
    int64_t x0 = input.at(0);
    if (mode == "crash13" && x0 == 13) return 1;
    if (mode == "crash-once" && argc > 2 && !std::ifstream(argv[2])) {
      std::ofstream(argv[2]) << "crashed\n";
      return 1;
    }
    if (mode == "sleep7" && x0 == 7) {
      std::this_thread::sleep_for(std::chrono::seconds(30));
    }
    if (mode == "bad-json") {
      std::cout << "this is not json" << std::endl;
      continue;
    }
    std::string text;
    for (const auto& v : input) {
      if (!text.empty()) text += "-";
      text += std::to_string(v.get<int64_t>());
    }
    nlohmann::json response = {{"id", mode == "wrong-id" ? id + 100 : id},
                               {"status", x0 < 0 ? "error" : "ok"},
                               {"output", text}};
    if (mode == "bad-status") response["status"] = "maybe";
    std::cout << response.dump() << std::endl;
  }
  return 0;
}
