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

#pragma once

#include <cctype>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>

#ifndef CPPHTTPLIB_LISTEN_BACKLOG
#define CPPHTTPLIB_LISTEN_BACKLOG 128
#endif
#include <httplib.h>

#include "petition/nodes/authority.hpp"
#include "petition/nodes/owner.hpp"
#include "petition/nodes/wire.hpp"

namespace petition::nodes {

inline int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownPetition: return 404;
    case ErrorCode::kForbidden: return 403;
    case ErrorCode::kAuthorityUnavailable: return 503;
    case ErrorCode::kIo:
    case ErrorCode::kTallyCorrupt: return 500;
    default: return 400;
  }
}

namespace detail {

inline void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Runs a handler and turns every failure into a JSON error body.
template <class F>
void Handle(httplib::Response& res, F&& f) {
  try {
    Reply(res, 200, f());
  } catch (const Error& e) {
    Reply(res, HttpStatusFor(e.code()), ErrorBody(e));
  } catch (const json::exception&) {
    Reply(res, 400, ErrorBody(ErrorCode::kMalformed, "unexpected JSON shape"));
  } catch (const std::exception&) {
    Reply(res, 500, ErrorBody(ErrorCode::kIo, "internal error"));
  }
}

inline bool IsLoopback(const std::string& addr) {
  return addr == "127.0.0.1" || addr == "::1" || addr == "::ffff:127.0.0.1";
}

inline std::string PercentEncode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 15]);
    }
  }
  return out;
}

}  // namespace detail

inline std::pair<std::string, int> ParseListenAddress(std::string_view address) {
  size_t colon = address.rfind(':');
  PETITION_ENFORCE(colon != std::string_view::npos && colon > 0, ErrorCode::kInvalidArgument,
                   "listen address must look like host:port");
  std::string host(address.substr(0, colon));
  int port = -1;
  try {
    port = std::stoi(std::string(address.substr(colon + 1)));
  } catch (const std::exception&) {
  }
  PETITION_ENFORCE(port >= 0 && port <= 65535, ErrorCode::kInvalidArgument,
                   "bad port in listen address");
  return {host, port};
}

// An httplib server on a background thread. Port 0 picks a free port.
class HttpServer {
 public:
  HttpServer() {
    server_.set_payload_max_length(1 << 20);
    // Requests can sit in the worker queue for a while under load.
    server_.set_read_timeout(std::chrono::seconds(30));
    server_.set_write_timeout(std::chrono::seconds(30));
  }
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;
  ~HttpServer() { Stop(); }

  httplib::Server& server() { return server_; }

  int Start(const std::string& host, int port) {
    int bound = port == 0 ? server_.bind_to_any_port(host)
                          : (server_.bind_to_port(host, port) ? port : -1);
    PETITION_ENFORCE(bound > 0, ErrorCode::kIo,
                     "cannot listen on " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return bound;
  }

  void Wait() {
    if (thread_.joinable()) thread_.join();
  }

  void Stop() {
    server_.stop();
    Wait();
  }

 private:
  httplib::Server server_;
  std::thread thread_;
};

// GET /keys, POST /sign, POST /decrypt.
inline void RegisterAuthorityRoutes(httplib::Server& server, std::shared_ptr<AuthorityNode> node) {
  server.Get("/keys", [node](const httplib::Request&, httplib::Response& res) {
    detail::Handle(res, [&] { return node->GetPublicKeys(); });
  });
  server.Post("/sign", [node](const httplib::Request& req, httplib::Response& res) {
    detail::Handle(res, [&] { return node->SignCredential(wire::Parse(req.body)); });
  });
  server.Post("/decrypt", [node](const httplib::Request& req, httplib::Response& res) {
    detail::Handle(res, [&] { return node->PartialDecrypt(wire::Parse(req.body)); });
  });
}

// Public vote and result routes plus loopback-only admin routes.
inline void RegisterOwnerRoutes(httplib::Server& server, std::shared_ptr<OwnerNode> node) {
  server.Post(R"(/petitions/(.+)/vote)", [node](const httplib::Request& req,
                                                 httplib::Response& res) {
    detail::Handle(res, [&] {
      VoteSubmission v = VoteSubmissionFromJson(wire::Parse(req.body));
      PETITION_ENFORCE(v.petition_id == req.matches[1].str(), ErrorCode::kMalformed,
                       "petitionID does not match the URL");
      node->SubmitVote(v);
      return json{{"status", "accepted"}, {"petitionID", v.petition_id}};
    });
  });
  server.Get(R"(/petitions/(.+)/result)", [node](const httplib::Request& req,
                                                  httplib::Response& res) {
    detail::Handle(res, [&] {
      std::string id = req.matches[1].str();
      return ResultJson(id, node->GetResult(id));
    });
  });
  server.Post("/admin/petitions", [node](const httplib::Request& req, httplib::Response& res) {
    detail::Handle(res, [&] {
      PETITION_ENFORCE(detail::IsLoopback(req.remote_addr), ErrorCode::kForbidden,
                       "admin routes are loopback-only");
      std::string id = wire::PetitionId(wire::Parse(req.body));
      node->CreatePetition(id);
      return json{{"status", "created"}, {"petitionID", id}};
    });
  });
  server.Post(R"(/admin/petitions/(.+)/close)", [node](const httplib::Request& req,
                                                        httplib::Response& res) {
    detail::Handle(res, [&] {
      PETITION_ENFORCE(detail::IsLoopback(req.remote_addr), ErrorCode::kForbidden,
                       "admin routes are loopback-only");
      std::string id = req.matches[1].str();
      return ResultJson(id, node->CloseAndTally(id));
    });
  });
}

// Small JSON-over-HTTP client. Connection failures and 5xx without a body
// become kAuthorityUnavailable; error bodies are rethrown as their Error.
class JsonHttpClient {
 public:
  explicit JsonHttpClient(std::string base_url,
                          std::chrono::seconds read_timeout = std::chrono::seconds(60))
      : base_url_(std::move(base_url)), read_timeout_(read_timeout) {
    while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
  }

  const std::string& base_url() const { return base_url_; }

  json Get(const std::string& path) const {
    auto client = MakeClient();
    return Finish(client->Get(path), path);
  }

  json Post(const std::string& path, const json& body) const {
    auto client = MakeClient();
    return Finish(client->Post(path, body.dump(), "application/json"), path);
  }

 private:
  std::unique_ptr<httplib::Client> MakeClient() const {
    auto client = std::make_unique<httplib::Client>(base_url_);
    PETITION_ENFORCE(client->is_valid(), ErrorCode::kInvalidArgument,
                     "bad node URL '" + base_url_ + "'");
    client->set_connection_timeout(std::chrono::seconds(3));
    client->set_read_timeout(read_timeout_);
    client->set_write_timeout(std::chrono::seconds(10));
    return client;
  }

  json Finish(const httplib::Result& result, const std::string& path) const {
    if (!result) {
      throw Error(ErrorCode::kAuthorityUnavailable,
                  base_url_ + path + " unreachable: " + httplib::to_string(result.error()));
    }
    json body = json::parse(result->body, nullptr, false);
    if (result->status == 200) {
      PETITION_ENFORCE(!body.is_discarded(), ErrorCode::kMalformed,
                       base_url_ + path + " returned invalid JSON");
      return body;
    }
    if (!body.is_discarded() && body.contains("error")) throw ErrorFromBody(body);
    throw Error(result->status >= 500 ? ErrorCode::kAuthorityUnavailable : ErrorCode::kMalformed,
                base_url_ + path + " answered HTTP " + std::to_string(result->status));
  }

  std::string base_url_;
  std::chrono::seconds read_timeout_;
};

class HttpAuthorityClient : public AuthorityClient {
 public:
  explicit HttpAuthorityClient(std::string base_url) : http_(std::move(base_url)) {}

  std::string Name() const override { return http_.base_url(); }
  json GetKeys() override { return http_.Get("/keys"); }
  json Sign(const json& request) override { return http_.Post("/sign", request); }
  json Decrypt(const json& chain) override { return http_.Post("/decrypt", chain); }

 private:
  JsonHttpClient http_;
};

class HttpOwnerClient {
 public:
  explicit HttpOwnerClient(std::string base_url) : http_(std::move(base_url)) {}

  void SubmitVote(const VoteSubmission& v) const {
    http_.Post("/petitions/" + detail::PercentEncode(v.petition_id) + "/vote", ToJson(v));
  }

  std::optional<tally::TallyResult> GetResult(const std::string& petition_id) const {
    return ResultFromJson(http_.Get("/petitions/" + detail::PercentEncode(petition_id) + "/result"));
  }

  void CreatePetition(const std::string& petition_id) const {
    http_.Post("/admin/petitions", json{{"petitionID", petition_id}});
  }

  tally::TallyResult Close(const std::string& petition_id) const {
    auto result = ResultFromJson(
        http_.Post("/admin/petitions/" + detail::PercentEncode(petition_id) + "/close",
                   json::object()));
    PETITION_ENFORCE(result.has_value(), ErrorCode::kMalformed, "close returned no result");
    return *result;
  }

 private:
  JsonHttpClient http_;
};

}  // namespace petition::nodes
