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

// petition: voter, operator and node command-line tool.

#include <csignal>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "petition/client/client.hpp"
#include "petition/nodes.hpp"

namespace {

namespace fs = std::filesystem;
using petition::Error;
using petition::ErrorCode;
using petition::nodes::json;

enum ExitCode : int { kOk = 0, kFailure = 1, kPending = 2, kUsage = 3 };

struct Output {
  bool json_mode = false;

  void Success(json payload, const std::string& text) const {
    if (json_mode) {
      payload["ok"] = true;
      std::cout << payload.dump() << std::endl;
    } else if (!text.empty()) {
      std::cout << text << std::endl;
    }
  }

  int Fail(const Error& e, int code = kFailure) const {
    std::string message = e.code() == ErrorCode::kDoubleVote
                              ? "already voted on this petition"
                              : std::string(e.what());
    if (json_mode) {
      std::cout << json{{"ok", false}, {"error", std::string(e.code_name())}, {"message", message}}
                       .dump()
                << std::endl;
    } else {
      std::cerr << "error: " << message << " (" << e.code_name() << ")" << std::endl;
    }
    return code;
  }
};

// Distinct deterministic streams per command and state file when
// PETITION_TEST_SEED is set.
petition::groups::Rng MakeRng(const std::string& purpose) {
  auto digest = petition::Sha256::Hash(petition::AsBytes(purpose));
  uint64_t salt = 0;
  for (int i = 0; i < 8; ++i) salt = (salt << 8) | digest[i];
  return petition::groups::Rng::FromEnvironment(salt);
}

std::string Absolute(const std::string& path) { return fs::absolute(path).lexically_normal(); }

std::vector<std::shared_ptr<petition::nodes::AuthorityClient>> HttpAuthorities(
    const std::vector<std::string>& urls) {
  std::vector<std::shared_ptr<petition::nodes::AuthorityClient>> out;
  for (const auto& url : urls) out.push_back(std::make_shared<petition::nodes::HttpAuthorityClient>(url));
  return out;
}

// Blocks until SIGINT or SIGTERM. The signals must already be blocked in
// every thread, which BlockTerminationSignals arranges before servers start.
sigset_t TerminationSignals() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  return set;
}

void BlockTerminationSignals() {
  sigset_t set = TerminationSignals();
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
}

void WaitForTermination() {
  sigset_t set = TerminationSignals();
  int sig = 0;
  sigwait(&set, &sig);
}

int CmdKeygen(const Output& out, const std::string& state_path, const std::string& tag,
              bool force) {
  if (fs::exists(state_path) && !force) {
    return out.Fail(Error(ErrorCode::kInvalidArgument,
                          state_path + " already exists; pass --force to replace it"));
  }
  auto rng = MakeRng("keygen:" + Absolute(state_path));
  auto state = petition::client::ClientState::Generate(tag, rng);
  petition::client::SaveState(state_path, state);
  out.Success({{"state", state_path}}, "wrote " + state_path);
  return kOk;
}

int CmdRequestCred(const Output& out, const std::string& state_path,
                   std::vector<std::string> urls, uint32_t threshold) {
  auto state = petition::client::LoadState(state_path);
  if (urls.empty()) urls = state.authorities;
  if (urls.empty()) {
    return out.Fail(Error(ErrorCode::kInvalidArgument, "no authorities given"), kUsage);
  }
  if (threshold == 0) threshold = state.threshold;
  if (threshold == 0 || threshold > urls.size()) {
    return out.Fail(Error(ErrorCode::kInvalidArgument,
                          "--threshold must lie in [1, number of authorities]"),
                    kUsage);
  }
  auto params = petition::groups::Setup(state.params_tag);
  auto rng = MakeRng("request-cred:" + Absolute(state_path));
  auto report =
      petition::client::RequestCredential(params, state, HttpAuthorities(urls), threshold, rng);
  petition::client::SaveState(state_path, state);

  json failures = json::array();
  for (const auto& [name, e] : report.failures) {
    failures.push_back({{"authority", name}, {"error", std::string(e.code_name())},
                        {"message", e.what()}});
    if (!out.json_mode) std::cerr << "warning: " << name << ": " << e.what() << std::endl;
  }
  out.Success({{"indices", report.used_indices}, {"failures", failures}},
              "credential issued by authorities " + json(report.used_indices).dump());
  return kOk;
}

int CmdVote(const Output& out, const std::string& state_path, const std::string& owner,
            const std::string& petition_id, const std::string& choice) {
  auto state = petition::client::LoadState(state_path);
  if (!state.credential) {
    return out.Fail(Error(ErrorCode::kInvalidArgument, "no credential; run request-cred first"));
  }
  auto params = petition::groups::Setup(state.params_tag);
  auto election_key =
      petition::client::FetchElectionKey(params, HttpAuthorities(state.authorities));
  auto rng = MakeRng("vote:" + Absolute(state_path) + ":" + petition_id);
  auto submission = petition::client::BuildVote(params, state, election_key, petition_id,
                                                choice == "yes" ? 1 : 0, rng);
  petition::nodes::HttpOwnerClient(owner).SubmitVote(submission);
  out.Success({{"status", "accepted"}, {"petitionID", petition_id}}, "vote accepted");
  return kOk;
}

int CmdResult(const Output& out, const std::string& owner, const std::string& petition_id) {
  auto result = petition::nodes::HttpOwnerClient(owner).GetResult(petition_id);
  if (!result) {
    out.Success({{"status", "pending"}, {"petitionID", petition_id}},
                "pending: the petition has not ended");
    return kPending;
  }
  out.Success({{"status", "finished"},
               {"petitionID", petition_id},
               {"yes", result->yes_count},
               {"no", result->no_count}},
              "yes " + std::to_string(result->yes_count) + " - no " +
                  std::to_string(result->no_count));
  return kOk;
}

int CmdDealer(const Output& out, int64_t threshold, int64_t n, const std::string& dir,
              const std::string& tag) {
  if (n < 1 || threshold < 1 || threshold > n || n > 1000) {
    return out.Fail(Error(ErrorCode::kInvalidArgument, "need 1 <= t <= n <= 1000"), kUsage);
  }
  auto params = petition::groups::Setup(tag);
  auto rng = MakeRng("dealer");
  auto dealt = petition::coconut::TtpKeyGen(params, static_cast<uint32_t>(threshold),
                                            static_cast<uint32_t>(n), rng);
  fs::create_directories(dir);
  json files = json::array();
  for (const auto& sk : dealt.signing_keys) {
    fs::path path = fs::path(dir) / ("authority-" + std::to_string(sk.index) + ".key.json");
    petition::AtomicWriteFile(path, petition::nodes::SigningKeyToJson(sk, tag).dump(2) + "\n");
    files.push_back(path.string());
  }
  petition::nodes::PublicBundle bundle{tag, static_cast<uint32_t>(threshold), dealt.verify_keys};
  fs::path public_path = fs::path(dir) / "public.json";
  petition::AtomicWriteFile(public_path, petition::nodes::ToJson(bundle).dump(2) + "\n",
                            fs::perms::owner_read | fs::perms::owner_write |
                                fs::perms::group_read | fs::perms::others_read);
  files.push_back(public_path.string());
  out.Success({{"files", files}}, "wrote " + std::to_string(files.size()) + " files to " + dir);
  return kOk;
}

int CmdAuthorityServe(const Output& out, const std::string& config_path) {
  auto config = petition::nodes::LoadNodeConfig(config_path);
  if (config.role != "authority") {
    return out.Fail(Error(ErrorCode::kInvalidArgument, "config role is not 'authority'"));
  }
  auto params = petition::groups::Setup(config.params_tag);
  if (!fs::exists(config.signing_key)) {
    return out.Fail(Error(ErrorCode::kIo, "signing key " + config.signing_key.string() +
                                              " does not exist"));
  }
  json key_json = petition::nodes::wire::Parse(petition::ReadFile(config.signing_key));
  auto signing_key = petition::nodes::SigningKeyFromJson(key_json);
  if (petition::nodes::wire::String(key_json, "params_tag") != config.params_tag) {
    return out.Fail(Error(ErrorCode::kInvalidArgument,
                          "signing key was dealt for other parameters"));
  }
  petition::tally::DecryptKeyPair decrypt_key;
  if (fs::exists(config.decrypt_key)) {
    decrypt_key = petition::nodes::DecryptKeyFromJson(
        params, petition::nodes::wire::Parse(petition::ReadFile(config.decrypt_key)));
  } else {
    auto rng = MakeRng("authority-decrypt-key:" + std::to_string(signing_key.index));
    decrypt_key = petition::tally::ElGamalKeyGen(
        params, "authority-" + std::to_string(signing_key.index), rng);
    petition::AtomicWriteFile(config.decrypt_key,
                              petition::nodes::DecryptKeyToJson(decrypt_key).dump(2) + "\n");
  }

  auto node = std::make_shared<petition::nodes::AuthorityNode>(params, signing_key, decrypt_key);
  auto [host, port] = petition::nodes::ParseListenAddress(config.listen);
  BlockTerminationSignals();
  petition::nodes::HttpServer server;
  petition::nodes::RegisterAuthorityRoutes(server.server(), node);
  int bound = server.Start(host, port);
  out.Success({{"role", "authority"}, {"index", signing_key.index},
               {"url", "http://" + host + ":" + std::to_string(bound)}},
              "authority " + std::to_string(signing_key.index) + " listening on http://" + host +
                  ":" + std::to_string(bound));
  WaitForTermination();
  server.Stop();
  return kOk;
}

int CmdOwnerServe(const Output& out, const std::string& config_path, int startup_wait_s) {
  auto config = petition::nodes::LoadNodeConfig(config_path);
  if (config.role != "owner") {
    return out.Fail(Error(ErrorCode::kInvalidArgument, "config role is not 'owner'"));
  }
  petition::nodes::OwnerOptions options;
  options.data_dir = config.data_dir;
  options.threshold = config.threshold;
  options.retry_attempts = config.retry_attempts;
  options.retry_backoff = std::chrono::milliseconds(config.retry_backoff_ms);
  auto node = std::make_shared<petition::nodes::OwnerNode>(
      petition::groups::Setup(config.params_tag), HttpAuthorities(config.authorities), options);

  // Authorities may still be starting; keys are fetched once, so wait.
  auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(startup_wait_s);
  for (;;) {
    try {
      node->Start();
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kAuthorityUnavailable ||
          std::chrono::steady_clock::now() >= deadline) {
        throw;
      }
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(200));
  }

  auto [host, port] = petition::nodes::ParseListenAddress(config.listen);
  BlockTerminationSignals();
  petition::nodes::HttpServer server;
  petition::nodes::RegisterOwnerRoutes(server.server(), node);
  int bound = server.Start(host, port);
  out.Success({{"role", "owner"}, {"url", "http://" + host + ":" + std::to_string(bound)}},
              "owner listening on http://" + host + ":" + std::to_string(bound));
  WaitForTermination();
  server.Stop();
  return kOk;
}

int CmdAdminCreate(const Output& out, const std::string& owner, const std::string& petition_id) {
  petition::nodes::HttpOwnerClient(owner).CreatePetition(petition_id);
  out.Success({{"status", "created"}, {"petitionID", petition_id}},
              "created petition " + petition_id);
  return kOk;
}

int CmdAdminClose(const Output& out, const std::string& owner, const std::string& petition_id) {
  auto result = petition::nodes::HttpOwnerClient(owner).Close(petition_id);
  out.Success({{"status", "finished"},
               {"petitionID", petition_id},
               {"yes", result.yes_count},
               {"no", result.no_count}},
              "yes " + std::to_string(result.yes_count) + " - no " +
                  std::to_string(result.no_count));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anonymous multi-authority e-petition client and nodes"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--json", out.json_mode, "Machine-readable output on stdout");
  std::string tag = petition::nodes::kDefaultParamsTag;

  std::string state_path, owner, petition_id, choice, config_path, out_dir;
  std::vector<std::string> authority_urls;
  uint32_t threshold = 0;
  int64_t dealer_t = 0, dealer_n = 0;
  bool force = false;
  int startup_wait_s = 30;
  int code = kOk;
  std::function<int()> run;

  auto* keygen = app.add_subcommand("keygen", "Create a voter state file");
  keygen->add_option("--state", state_path, "State file")->required();
  keygen->add_option("--params-tag", tag, "Public parameter tag");
  keygen->add_flag("--force", force, "Replace an existing state file");
  keygen->callback([&] { run = [&] { return CmdKeygen(out, state_path, tag, force); }; });

  auto* request = app.add_subcommand("request-cred", "Obtain a credential from the authorities");
  request->add_option("--state", state_path, "State file")->required();
  request->add_option("--authority", authority_urls, "Authority URL (repeatable)");
  request->add_option("--threshold,-t", threshold, "Signatures needed (t)");
  request->callback([&] {
    run = [&] { return CmdRequestCred(out, state_path, authority_urls, threshold); };
  });

  auto* vote = app.add_subcommand("vote", "Vote on a petition");
  vote->add_option("--state", state_path, "State file")->required();
  vote->add_option("--owner", owner, "Petition owner URL")->required();
  vote->add_option("--petition", petition_id, "Petition id")->required();
  vote->add_option("--choice", choice, "yes or no")
      ->required()
      ->check(CLI::IsMember({"yes", "no"}));
  vote->callback([&] { run = [&] { return CmdVote(out, state_path, owner, petition_id, choice); }; });

  auto* result = app.add_subcommand("result", "Show a petition result");
  result->add_option("--owner", owner, "Petition owner URL")->required();
  result->add_option("--petition", petition_id, "Petition id")->required();
  result->callback([&] { run = [&] { return CmdResult(out, owner, petition_id); }; });

  auto* dealer = app.add_subcommand("dealer", "Deal t-of-n authority signing keys");
  dealer->add_option("t", dealer_t, "Threshold")->required();
  dealer->add_option("n", dealer_n, "Number of authorities")->required();
  dealer->add_option("out_dir", out_dir, "Output directory")->required();
  dealer->add_option("--params-tag", tag, "Public parameter tag");
  dealer->callback([&] { run = [&] { return CmdDealer(out, dealer_t, dealer_n, out_dir, tag); }; });

  auto* authority = app.add_subcommand("authority", "Authority node");
  authority->require_subcommand(1);
  auto* authority_serve = authority->add_subcommand("serve", "Run an authority node");
  authority_serve->add_option("--config", config_path, "Config file")->required();
  authority_serve->callback([&] { run = [&] { return CmdAuthorityServe(out, config_path); }; });

  auto* owner_cmd = app.add_subcommand("owner", "Petition owner node");
  owner_cmd->require_subcommand(1);
  auto* owner_serve = owner_cmd->add_subcommand("serve", "Run the owner node");
  owner_serve->add_option("--config", config_path, "Config file")->required();
  owner_serve->add_option("--startup-wait", startup_wait_s,
                          "Seconds to wait for authorities at startup");
  owner_serve->callback(
      [&] { run = [&] { return CmdOwnerServe(out, config_path, startup_wait_s); }; });

  auto* admin = app.add_subcommand("admin", "Owner administration (loopback only)");
  admin->require_subcommand(1);
  auto* create = admin->add_subcommand("create", "Create a petition");
  create->add_option("--owner", owner, "Petition owner URL")->required();
  create->add_option("--petition", petition_id, "Petition id")->required();
  create->callback([&] { run = [&] { return CmdAdminCreate(out, owner, petition_id); }; });
  auto* close = admin->add_subcommand("close", "Close a petition and tally it");
  close->add_option("--owner", owner, "Petition owner URL")->required();
  close->add_option("--petition", petition_id, "Petition id")->required();
  close->callback([&] { run = [&] { return CmdAdminClose(out, owner, petition_id); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    code = run();
  } catch (const Error& e) {
    code = out.Fail(e);
  } catch (const std::exception& e) {
    code = out.Fail(Error(ErrorCode::kIo, e.what()));
  }
  return code;
}
