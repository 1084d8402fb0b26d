// Copyright 2026 The Petition Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared fixtures for node, CLI and acceptance tests.

#pragma once

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "petition/client/client.hpp"
#include "petition/nodes.hpp"

extern char** environ;

namespace petition::testing {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "petition-test-XXXXXX").string();
    char* made = ::mkdtemp(tmpl.data());
    if (made == nullptr) throw Error(ErrorCode::kIo, "mkdtemp failed");
    path_ = made;
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// t-of-n authorities running in process behind LocalAuthorityClient.
struct Federation {
  groups::PublicParams params;
  uint32_t threshold = 0;
  std::vector<std::shared_ptr<nodes::AuthorityNode>> nodes;
  std::vector<std::shared_ptr<nodes::LocalAuthorityClient>> locals;

  Federation(std::string_view tag, uint32_t t, uint32_t n, groups::Rng& rng)
      : params(groups::Setup(tag)), threshold(t) {
    auto dealt = coconut::TtpKeyGen(params, t, n, rng);
    for (const auto& sk : dealt.signing_keys) {
      auto dk = tally::ElGamalKeyGen(params, "authority-" + std::to_string(sk.index), rng);
      nodes.push_back(std::make_shared<nodes::AuthorityNode>(params, sk, dk));
      locals.push_back(std::make_shared<nodes::LocalAuthorityClient>(nodes.back()));
    }
  }

  std::vector<std::shared_ptr<nodes::AuthorityClient>> clients() const {
    return {locals.begin(), locals.end()};
  }

  client::ClientState NewVoter(groups::Rng& rng) const {
    auto state = client::ClientState::Generate(params.tag, rng);
    client::RequestCredential(params, state, clients(), threshold, rng);
    return state;
  }

  groups::G1Point ElectionKey() const { return client::FetchElectionKey(params, clients()); }

  std::unique_ptr<nodes::OwnerNode> NewOwner(const fs::path& data_dir,
                                             nodes::OwnerOptions options = {}) const {
    options.data_dir = data_dir;
    options.threshold = threshold;
    auto owner = std::make_unique<nodes::OwnerNode>(params, clients(), options);
    owner->Start();
    return owner;
  }
};

// A child process with its stdout on a pipe.
class Subprocess {
 public:
  explicit Subprocess(const std::vector<std::string>& args,
                      const std::vector<std::string>& extra_env = {}) {
    int fds[2];
    if (::pipe(fds) != 0) throw Error(ErrorCode::kIo, "pipe failed");
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, fds[1], STDOUT_FILENO);
    posix_spawn_file_actions_addclose(&actions, fds[0]);
    posix_spawn_file_actions_addclose(&actions, fds[1]);

    std::vector<std::string> env_store(extra_env);
    for (char** e = environ; *e != nullptr; ++e) env_store.emplace_back(*e);
    std::vector<char*> env;
    for (auto& e : env_store) env.push_back(e.data());
    env.push_back(nullptr);
    std::vector<std::string> arg_store(args);
    std::vector<char*> argv;
    for (auto& a : arg_store) argv.push_back(a.data());
    argv.push_back(nullptr);

    int rc = posix_spawn(&pid_, argv[0], &actions, nullptr, argv.data(), env.data());
    posix_spawn_file_actions_destroy(&actions);
    ::close(fds[1]);
    if (rc != 0) {
      ::close(fds[0]);
      throw Error(ErrorCode::kIo, "cannot spawn " + args[0]);
    }
    out_ = ::fdopen(fds[0], "r");
  }
  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;
  ~Subprocess() {
    Kill(SIGKILL);
    if (out_ != nullptr) std::fclose(out_);
  }

  // Next stdout line, or nullopt at EOF.
  std::optional<std::string> ReadLine() {
    std::string line;
    int c;
    while ((c = std::fgetc(out_)) != EOF) {
      if (c == '\n') return line;
      line.push_back(static_cast<char>(c));
    }
    if (line.empty()) return std::nullopt;
    return line;
  }

  std::string ReadAll() {
    std::string all;
    while (auto line = ReadLine()) all += *line + "\n";
    return all;
  }

  void Kill(int sig) {
    if (pid_ > 0) {
      ::kill(pid_, sig);
      Wait();
    }
  }

  int Wait() {
    if (pid_ <= 0) return status_;
    int status = 0;
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
    status_ = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    return status_;
  }

 private:
  pid_t pid_ = -1;
  int status_ = -1;
  FILE* out_ = nullptr;
};

struct CommandResult {
  int exit_code = -1;
  std::string stdout_text;
};

inline CommandResult RunCommand(const std::vector<std::string>& args,
                                const std::vector<std::string>& extra_env = {}) {
  Subprocess p(args, extra_env);
  CommandResult r;
  r.stdout_text = p.ReadAll();
  r.exit_code = p.Wait();
  return r;
}

// Starts a `serve` command and returns the URL from its --json banner.
inline std::string AwaitServerUrl(Subprocess& p) {
  auto line = p.ReadLine();
  if (!line) throw Error(ErrorCode::kIo, "server exited before listening");
  return nodes::json::parse(*line).at("url").get<std::string>();
}

}  // namespace petition::testing
