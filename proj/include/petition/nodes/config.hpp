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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "petition/coconut/keys.hpp"
#include "petition/common/file.hpp"
#include "petition/groups/params.hpp"
#include "petition/nodes/wire.hpp"
#include "petition/tally/elgamal.hpp"

// Key files and node configuration.
namespace petition::nodes {

inline constexpr const char* kDefaultParamsTag = "petition-v1";

inline Scalar ScalarFromHex(const json& j, std::string_view name) {
  Bytes raw;
  try {
    raw = FromHex(wire::String(j, name));
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformed, "field '" + std::string(name) + "': " + e.what());
  }
  return groups::DecodeScalar(raw);
}

inline json SigningKeyToJson(const coconut::AuthoritySigningKey& sk, std::string_view tag) {
  return {{"index", sk.index},
          {"params_tag", tag},
          {"x", ToHex(sk.x.ToBytes())},
          {"y", ToHex(sk.y.ToBytes())}};
}

inline coconut::AuthoritySigningKey SigningKeyFromJson(const json& j) {
  coconut::AuthoritySigningKey sk;
  uint64_t index = wire::Unsigned(j, "index");
  PETITION_ENFORCE(index >= 1 && index <= UINT32_MAX, ErrorCode::kMalformed, "bad index");
  sk.index = static_cast<uint32_t>(index);
  sk.x = ScalarFromHex(j, "x");
  sk.y = ScalarFromHex(j, "y");
  return sk;
}

inline json DecryptKeyToJson(const tally::DecryptKeyPair& kp) {
  return {{"identity", kp.identity},
          {"secret", ToHex(kp.secret.ToBytes())},
          {"gamma", wire::B64(kp.gamma)},
          {"pok", Base64Encode(kp.pok.Serialize())}};
}

// Rejects files whose gamma or proof do not belong to the secret.
inline tally::DecryptKeyPair DecryptKeyFromJson(const groups::PublicParams& params,
                                                const json& j) {
  tally::DecryptKeyPair kp;
  kp.identity = wire::String(j, "identity");
  kp.secret = ScalarFromHex(j, "secret");
  kp.gamma = wire::PointG1(j, "gamma");
  kp.pok = nizk::KeyProof::Deserialize(wire::Binary(j, "pok"));
  PETITION_ENFORCE(kp.gamma == params.g1 * kp.secret, ErrorCode::kMalformed,
                   "decryption key gamma does not match its secret");
  PETITION_ENFORCE(nizk::VerifyKeyPossession(params, kp.gamma, kp.identity, kp.pok),
                   ErrorCode::kMalformed, "decryption key proof does not verify");
  return kp;
}

// Public output of the dealer.
struct PublicBundle {
  std::string params_tag = kDefaultParamsTag;
  uint32_t threshold = 0;
  std::vector<coconut::AuthorityVerifyKey> verify_keys;
};

inline json ToJson(const PublicBundle& b) {
  json keys = json::array();
  for (const auto& vk : b.verify_keys) keys.push_back(ToJson(vk));
  return {{"params_tag", b.params_tag},
          {"threshold", b.threshold},
          {"authorities", b.verify_keys.size()},
          {"verify_keys", keys}};
}

inline PublicBundle PublicBundleFromJson(const json& j) {
  PublicBundle b;
  b.params_tag = wire::String(j, "params_tag");
  b.threshold = static_cast<uint32_t>(wire::Unsigned(j, "threshold"));
  for (const json& k : wire::Field(j, "verify_keys")) b.verify_keys.push_back(VerifyKeyFromJson(k));
  PETITION_ENFORCE(wire::Unsigned(j, "authorities") == b.verify_keys.size(),
                   ErrorCode::kMalformed, "authority count does not match the key list");
  return b;
}

struct NodeConfig {
  std::string role;  // "authority" or "owner"
  std::string listen = "127.0.0.1:0";
  std::string params_tag = kDefaultParamsTag;
  // Authority.
  std::filesystem::path signing_key;
  std::filesystem::path decrypt_key;
  // Owner.
  std::vector<std::string> authorities;
  uint32_t threshold = 0;
  std::filesystem::path data_dir;
  int retry_attempts = 4;
  int retry_backoff_ms = 200;
};

// Relative paths in the file are taken relative to the file's directory.
inline NodeConfig LoadNodeConfig(const std::filesystem::path& path) {
  json j = wire::Parse(ReadFile(path));
  std::filesystem::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path out(p);
    return out.is_absolute() ? out : base / out;
  };
  NodeConfig c;
  c.role = wire::String(j, "role");
  if (j.contains("listen")) c.listen = wire::String(j, "listen");
  if (j.contains("params_tag")) c.params_tag = wire::String(j, "params_tag");
  if (c.role == "authority") {
    c.signing_key = resolve(wire::String(j, "signing_key"));
    c.decrypt_key = resolve(wire::String(j, "decrypt_key"));
  } else if (c.role == "owner") {
    for (const json& url : wire::Field(j, "authorities")) {
      PETITION_ENFORCE(url.is_string(), ErrorCode::kMalformed, "authority URLs must be strings");
      c.authorities.push_back(url.get<std::string>());
    }
    PETITION_ENFORCE(!c.authorities.empty(), ErrorCode::kMalformed, "no authorities configured");
    c.threshold = static_cast<uint32_t>(wire::Unsigned(j, "threshold"));
    c.data_dir = resolve(wire::String(j, "data_dir"));
    if (j.contains("retry_attempts")) {
      c.retry_attempts = static_cast<int>(wire::Unsigned(j, "retry_attempts"));
    }
    if (j.contains("retry_backoff_ms")) {
      c.retry_backoff_ms = static_cast<int>(wire::Unsigned(j, "retry_backoff_ms"));
    }
  } else {
    throw Error(ErrorCode::kMalformed, "role must be 'authority' or 'owner'");
  }
  return c;
}

}  // namespace petition::nodes
