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

// Adapter that turns any program into a SUT.
//
// Workers are child processes started with `/bin/sh -c <command>`. They read
// one JSON request per line on stdin and answer one JSON response per line on
// stdout, in request order:
//
//   request:  {"id": <uint64>, "input": [<int64>, ...]}
//   response: {"id": <uint64>, "status": "ok"|"error", "output": <string>}
//
// A crashed or hung worker is restarted and the request retried once. If that
// fails too, the crash is reported as an error output ("adapter: worker
// terminated" / "adapter: timeout"). A malformed response or an unexpected id
// throws ProtocolError.

#ifndef BOUNDEX_EXTERNAL_SUT_H_
#define BOUNDEX_EXTERNAL_SUT_H_

#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "boundex/sut.h"

namespace boundex {

struct ExternalSutOptions {
  std::string command;
  std::vector<std::string> dims;
  std::string id = "external";
  size_t workers = 0;  // 0: one per hardware thread
  std::chrono::milliseconds timeout{5000};
};

class ExternalSut final : public Sut {
 public:
  explicit ExternalSut(ExternalSutOptions options);
  ~ExternalSut() override;

  ExternalSut(const ExternalSut&) = delete;
  ExternalSut& operator=(const ExternalSut&) = delete;

  const SutDescriptor& descriptor() const override { return descriptor_; }
  const Stepper& stepper() const override { return stepper_; }
  SutOutput Evaluate(const InputPoint& x) const override;

  size_t pool_size() const { return workers_.size(); }

 private:
  class Worker;

  Worker& Acquire() const;
  void Release(Worker& worker) const;

  ExternalSutOptions options_;
  SutDescriptor descriptor_;
  IntegerStepper stepper_;
  std::vector<std::unique_ptr<Worker>> workers_;

  mutable std::mutex mu_;
  mutable std::condition_variable available_;
  mutable std::vector<Worker*> idle_;
};

}  // namespace boundex

#endif  // BOUNDEX_EXTERNAL_SUT_H_
