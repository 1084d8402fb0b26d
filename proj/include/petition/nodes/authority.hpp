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

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>

#include "petition/coconut/issuance.hpp"
#include "petition/coconut/keys.hpp"
#include "petition/groups/params.hpp"
#include "petition/nodes/wire.hpp"
#include "petition/tally/elgamal.hpp"

namespace petition::nodes {

// Blind signing, key publication and one stage of the decryption chain.
// The only mutable state is the set of (petition, stage) pairs already
// decrypted, since a repeated partial decryption would corrupt the tally.
class AuthorityNode {
 public:
  AuthorityNode(groups::PublicParams params, coconut::AuthoritySigningKey signing_key,
                tally::DecryptKeyPair decrypt_key)
      : params_(std::move(params)),
        signing_key_(std::move(signing_key)),
        decrypt_key_(std::move(decrypt_key)) {
    keys_.vk = coconut::DeriveVerifyKey(params_, signing_key_);
    keys_.elgamal = tally::Publish(decrypt_key_);
  }

  uint32_t index() const { return signing_key_.index; }
  const AuthorityKeys& keys() const { return keys_; }

  json GetPublicKeys() const { return ToJson(keys_); }

  json SignCredential(const json& body) const {
    coconut::CredentialRequest req = CredentialRequestFromJson(body);
    return ToJson(coconut::BlindSign(params_, signing_key_, req));
  }

  json PartialDecrypt(const json& body) {
    ChainMessage msg = ChainMessageFromJson(body);
    {
      std::lock_guard lock(mu_);
      bool fresh = processed_.emplace(msg.petition_id, msg.stage).second;
      PETITION_ENFORCE(fresh, ErrorCode::kAlreadyProcessed,
                       "stage " + std::to_string(msg.stage) + " of '" + msg.petition_id +
                           "' was already decrypted");
    }
    msg.total.yes = tally::PartialDecrypt(msg.total.yes, decrypt_key_.secret);
    msg.total.no = tally::PartialDecrypt(msg.total.no, decrypt_key_.secret);
    return ToJson(msg);
  }

 private:
  groups::PublicParams params_;
  coconut::AuthoritySigningKey signing_key_;
  tally::DecryptKeyPair decrypt_key_;
  AuthorityKeys keys_;
  std::mutex mu_;
  std::set<std::pair<std::string, uint32_t>> processed_;
};

// How clients and the owner reach an authority. Failures surface as Error;
// an unreachable node is kAuthorityUnavailable.
class AuthorityClient {
 public:
  virtual ~AuthorityClient() = default;
  virtual std::string Name() const = 0;
  virtual json GetKeys() = 0;
  virtual json Sign(const json& request) = 0;
  virtual json Decrypt(const json& chain) = 0;
};

// In-process transport. Bodies still go through text JSON so both
// transports see identical inputs. SetAvailable(false) simulates an outage.
class LocalAuthorityClient : public AuthorityClient {
 public:
  explicit LocalAuthorityClient(std::shared_ptr<AuthorityNode> node) : node_(std::move(node)) {}

  void SetAvailable(bool available) { available_ = available; }

  std::string Name() const override { return "local:" + std::to_string(node_->index()); }

  json GetKeys() override {
    return Call([&](const json&) { return node_->GetPublicKeys(); }, json::object());
  }
  json Sign(const json& request) override {
    return Call([&](const json& j) { return node_->SignCredential(j); }, request);
  }
  json Decrypt(const json& chain) override {
    return Call([&](const json& j) { return node_->PartialDecrypt(j); }, chain);
  }

 private:
  template <class F>
  json Call(F&& f, const json& body) {
    PETITION_ENFORCE(available_, ErrorCode::kAuthorityUnavailable, Name() + " is unavailable");
    return json::parse(f(json::parse(body.dump())).dump());
  }

  std::shared_ptr<AuthorityNode> node_;
  std::atomic<bool> available_{true};
};

}  // namespace petition::nodes
