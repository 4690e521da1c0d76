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

#include "boundex/external_sut.h"

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "json.hpp"

extern char** environ;

namespace boundex {

class ExternalSut::Worker {
 public:
  enum class Outcome { kAnswered, kCrashed, kTimedOut };

  explicit Worker(std::string command) : command_(std::move(command)) {}
  ~Worker() { Stop(); }

  // Sends one request and waits for its response. Throws ProtocolError on a
  // malformed response or an id mismatch.
  Outcome Call(const InputPoint& x, std::chrono::milliseconds timeout,
               SutOutput& output) {
    if (pid_ <= 0) Start();
    uint64_t id = next_id_++;
    nlohmann::json request = {{"id", id}, {"input", x.coords()}};
    std::string line = request.dump() + "\n";
    if (!SendAll(line)) {
      Stop();
      return Outcome::kCrashed;
    }
    std::string response;
    Outcome outcome = ReadLine(timeout, response);
    if (outcome != Outcome::kAnswered) {
      Stop();
      return outcome;
    }
    output = ParseResponse(response, id);
    return Outcome::kAnswered;
  }

  void Stop() {
    if (fd_ >= 0) {
      close(fd_);
      fd_ = -1;
    }
    if (pid_ > 0) {
      kill(-pid_, SIGKILL);
      waitpid(pid_, nullptr, 0);
      pid_ = -1;
    }
    buffer_.clear();
  }

 private:
  void Start() {
    int sv[2];
    if (socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0) {
      throw std::runtime_error(std::string("socketpair: ") + strerror(errno));
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, sv[1], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, sv[1], STDOUT_FILENO);
    // A process group of its own, so Stop() also reaches whatever the shell
    // forked.
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
    posix_spawnattr_setpgroup(&attr, 0);
    const char* argv[] = {"sh", "-c", command_.c_str(), nullptr};
    pid_t pid = -1;
    int rc = posix_spawn(&pid, "/bin/sh", &actions, &attr,
                         const_cast<char* const*>(argv), environ);
    posix_spawnattr_destroy(&attr);
    posix_spawn_file_actions_destroy(&actions);
    close(sv[1]);
    if (rc != 0) {
      close(sv[0]);
      throw std::runtime_error(std::string("spawn worker: ") + strerror(rc));
    }
    pid_ = pid;
    fd_ = sv[0];
  }

  bool SendAll(std::string_view data) {
    while (!data.empty()) {
      ssize_t n = send(fd_, data.data(), data.size(), MSG_NOSIGNAL);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return false;
      data.remove_prefix(static_cast<size_t>(n));
    }
    return true;
  }

  Outcome ReadLine(std::chrono::milliseconds timeout, std::string& line) {
    auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      if (auto newline = buffer_.find('\n'); newline != std::string::npos) {
        line = buffer_.substr(0, newline);
        buffer_.erase(0, newline + 1);
        return Outcome::kAnswered;
      }
      auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (remaining.count() <= 0) return Outcome::kTimedOut;
      pollfd pfd{fd_, POLLIN, 0};
      int ready = poll(&pfd, 1, static_cast<int>(remaining.count()));
      if (ready < 0 && errno == EINTR) continue;
      if (ready < 0) return Outcome::kCrashed;
      if (ready == 0) return Outcome::kTimedOut;
      char chunk[4096];
      ssize_t n = recv(fd_, chunk, sizeof(chunk), 0);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return Outcome::kCrashed;
      buffer_.append(chunk, static_cast<size_t>(n));
    }
  }

  static SutOutput ParseResponse(const std::string& line, uint64_t expected_id) {
    nlohmann::json response;
    try {
      response = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ProtocolError("malformed worker response: " + std::string(e.what()));
    }
    if (!response.is_object() || !response.contains("id") ||
        !response["id"].is_number_unsigned() || !response.contains("status") ||
        !response["status"].is_string() || !response.contains("output") ||
        !response["output"].is_string()) {
      throw ProtocolError("malformed worker response: " + line);
    }
    if (response["id"].get<uint64_t>() != expected_id) {
      throw ProtocolError("unexpected response id " + response["id"].dump() +
                          " (expected " + std::to_string(expected_id) + ")");
    }
    auto status = response["status"].get<std::string>();
    if (status != "ok" && status != "error") {
      throw ProtocolError("unknown response status: " + status);
    }
    return {ParseStatus(status), response["output"].get<std::string>()};
  }

  std::string command_;
  pid_t pid_ = -1;
  int fd_ = -1;
  uint64_t next_id_ = 1;
  std::string buffer_;
};

ExternalSut::ExternalSut(ExternalSutOptions options)
    : options_(std::move(options)),
      stepper_(options_.dims.empty() ? 0 : options_.dims.size() - 1) {
  if (options_.command.empty()) {
    throw PreconditionError("external SUT needs a worker command");
  }
  if (options_.dims.empty()) {
    throw PreconditionError("external SUT needs at least one dimension");
  }
  descriptor_.id = options_.id;
  for (const auto& dim : options_.dims) {
    descriptor_.dims.push_back({dim, std::nullopt, std::nullopt});
  }
  size_t count = options_.workers;
  if (count == 0) count = std::max(1u, std::thread::hardware_concurrency());
  for (size_t i = 0; i < count; ++i) {
    workers_.push_back(std::make_unique<Worker>(options_.command));
    idle_.push_back(workers_.back().get());
  }
}

ExternalSut::~ExternalSut() = default;

ExternalSut::Worker& ExternalSut::Acquire() const {
  std::unique_lock lock(mu_);
  available_.wait(lock, [this] { return !idle_.empty(); });
  Worker* worker = idle_.back();
  idle_.pop_back();
  return *worker;
}

void ExternalSut::Release(Worker& worker) const {
  {
    std::lock_guard lock(mu_);
    idle_.push_back(&worker);
  }
  available_.notify_one();
}

SutOutput ExternalSut::Evaluate(const InputPoint& x) const {
  Worker& worker = Acquire();
  struct Releaser {
    const ExternalSut* sut;
    Worker& worker;
    ~Releaser() { sut->Release(worker); }
  } releaser{this, worker};

  SutOutput output;
  Worker::Outcome outcome = Worker::Outcome::kCrashed;
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      outcome = worker.Call(x, options_.timeout, output);
    } catch (const ProtocolError&) {
      worker.Stop();  // the stream is out of sync
      throw;
    }
    if (outcome == Worker::Outcome::kAnswered) return output;
  }
  return SutOutput::Error(outcome == Worker::Outcome::kTimedOut
                              ? "adapter: timeout"
                              : "adapter: worker terminated");
}

}  // namespace boundex
