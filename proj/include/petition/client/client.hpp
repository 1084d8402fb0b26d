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

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <future>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "petition/coconut/device_key.hpp"
#include "petition/coconut/issuance.hpp"
#include "petition/coconut/keys.hpp"
#include "petition/coconut/show.hpp"
#include "petition/common/file.hpp"
#include "petition/groups/params.hpp"
#include "petition/groups/rng.hpp"
#include "petition/nodes/authority.hpp"
#include "petition/nodes/config.hpp"
#include "petition/nodes/wire.hpp"
#include "petition/tally/elgamal.hpp"

// Voter side of the protocol: local secrets, credential issuance and vote
// construction.
namespace petition::client {

using nodes::json;
using groups::G1Point;
using groups::Scalar;

struct ClientState {
  std::string params_tag = nodes::kDefaultParamsTag;
  Scalar m;
  coconut::DeviceKeyPair device;
  Scalar elgamal_secret;  // d
  std::optional<coconut::Credential> credential;
  std::optional<coconut::AggregatedVerifyKey> verify_key;
  std::vector<std::string> authorities;
  uint32_t threshold = 0;

  static ClientState Generate(std::string_view params_tag, groups::Rng& rng) {
    ClientState s;
    s.params_tag = std::string(params_tag);
    s.m = groups::RandomScalar(rng);
    s.device = coconut::DeviceKeyPair::Generate(rng);
    s.elgamal_secret = groups::RandomScalar(rng);
    return s;
  }
};

inline json ToJson(const ClientState& s) {
  json out = {
      {"version", 1},
      {"params_tag", s.params_tag},
      {"m", ToHex(s.m.ToBytes())},
      {"device_secret", ToHex(s.device.secret.ToBytes())},
      {"elgamal_secret", ToHex(s.elgamal_secret.ToBytes())},
      {"authorities", s.authorities},
      {"threshold", s.threshold},
      {"credential", nullptr},
      {"verify_key", nullptr},
  };
  if (s.credential) {
    out["credential"] = {{"h", nodes::wire::B64(s.credential->h)},
                         {"s", nodes::wire::B64(s.credential->s)}};
  }
  if (s.verify_key) {
    out["verify_key"] = {{"g2", nodes::wire::B64(s.verify_key->g2)},
                         {"alpha", nodes::wire::B64(s.verify_key->alpha)},
                         {"beta", nodes::wire::B64(s.verify_key->beta)},
                         {"subset", s.verify_key->subset}};
  }
  return out;
}

inline ClientState ClientStateFromJson(const json& j) {
  namespace wire = nodes::wire;
  ClientState s;
  PETITION_ENFORCE(wire::Unsigned(j, "version") == 1, ErrorCode::kMalformed,
                   "unsupported state file version");
  s.params_tag = wire::String(j, "params_tag");
  s.m = nodes::ScalarFromHex(j, "m");
  s.device = coconut::DeviceKeyPair::FromSecret(nodes::ScalarFromHex(j, "device_secret"));
  s.elgamal_secret = nodes::ScalarFromHex(j, "elgamal_secret");
  for (const json& url : wire::Field(j, "authorities")) s.authorities.push_back(url.get<std::string>());
  s.threshold = static_cast<uint32_t>(wire::Unsigned(j, "threshold"));
  if (const json& c = wire::Field(j, "credential"); !c.is_null()) {
    s.credential = coconut::Credential{wire::PointG1(c, "h"), wire::PointG1(c, "s")};
  }
  if (const json& vk = wire::Field(j, "verify_key"); !vk.is_null()) {
    coconut::AggregatedVerifyKey key;
    key.g2 = wire::PointG2(vk, "g2");
    key.alpha = wire::PointG2(vk, "alpha");
    key.beta = wire::PointG2(vk, "beta");
    key.subset = wire::Field(vk, "subset").get<std::vector<uint32_t>>();
    s.verify_key = key;
  }
  return s;
}

inline ClientState LoadState(const std::filesystem::path& path) {
  PETITION_ENFORCE(std::filesystem::exists(path), ErrorCode::kInvalidArgument,
                   "no state file at " + path.string() + "; run keygen first");
  try {
    return ClientStateFromJson(nodes::wire::Parse(ReadFile(path)));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformed, "state file " + path.string() + ": " + e.what());
  }
}

inline void SaveState(const std::filesystem::path& path, const ClientState& state) {
  AtomicWriteFile(path, ToJson(state).dump(2) + "\n");
}

struct IssuanceReport {
  std::vector<uint32_t> used_indices;
  // Authorities that failed, with the error they produced.
  std::vector<std::pair<std::string, Error>> failures;
};

// Sends one request to every authority concurrently, keeps the partials
// that verify under the sender's own key, aggregates the t lowest indices
// and checks the result with a full show before touching `state`.
inline IssuanceReport RequestCredential(const groups::PublicParams& params, ClientState& state,
                                        std::vector<std::shared_ptr<nodes::AuthorityClient>> authorities,
                                        uint32_t threshold, groups::Rng& rng) {
  PETITION_ENFORCE(threshold >= 1 && threshold <= authorities.size(), ErrorCode::kInvalidArgument,
                   "threshold must lie in [1, number of authorities]");
  coconut::PreparedRequest prepared =
      coconut::PrepareBlindSign(params, state.m, state.device, rng, state.elgamal_secret);
  json body = nodes::ToJson(prepared.request);

  struct Answer {
    nodes::AuthorityKeys keys;
    coconut::PartialCredential partial;
  };
  std::vector<std::future<Answer>> pending;
  for (auto& a : authorities) {
    pending.push_back(std::async(std::launch::async, [a, &body, &prepared] {
      Answer out;
      out.keys = nodes::AuthorityKeysFromJson(a->GetKeys());
      auto blinded = nodes::BlindedPartialFromJson(a->Sign(body));
      PETITION_ENFORCE(blinded.index == out.keys.vk.index, ErrorCode::kMalformed,
                       "partial index does not match the authority key");
      out.partial = coconut::Unblind(blinded, prepared.elgamal_secret);
      return out;
    }));
  }

  IssuanceReport report;
  std::vector<Answer> good;
  for (size_t i = 0; i < pending.size(); ++i) {
    try {
      Answer a = pending[i].get();
      const auto& vk = a.keys.vk;
      if (!coconut::CredentialMatches(vk.g2, vk.alpha, vk.beta, state.m, a.partial.credential)) {
        throw Error(ErrorCode::kBadSignature, "partial credential does not verify");
      }
      good.push_back(std::move(a));
    } catch (const Error& e) {
      report.failures.emplace_back(authorities[i]->Name(), e);
    }
  }
  if (good.size() < threshold) {
    // Surface the authorities' own verdict when there is one.
    for (const auto& [name, e] : report.failures) {
      if (e.code() != ErrorCode::kAuthorityUnavailable) {
        throw Error(e.code(), name + ": " + e.what());
      }
    }
    throw Error(ErrorCode::kAuthorityUnavailable,
                "only " + std::to_string(good.size()) + " of the " + std::to_string(threshold) +
                    " required authorities answered");
  }

  std::sort(good.begin(), good.end(),
            [](const Answer& a, const Answer& b) { return a.keys.vk.index < b.keys.vk.index; });
  good.resize(threshold);
  std::vector<coconut::PartialCredential> partials;
  std::vector<coconut::AuthorityVerifyKey> vks;
  for (const auto& a : good) {
    partials.push_back(a.partial);
    vks.push_back(a.keys.vk);
    report.used_indices.push_back(a.keys.vk.index);
  }
  coconut::Credential credential = coconut::AggregateCredential(partials);
  coconut::AggregatedVerifyKey vk = coconut::AggregateVerifyKeys(params, vks, threshold);

  coconut::ShowBundle probe =
      coconut::ProveCredential(params, vk, state.m, credential, "self-check", rng);
  PETITION_ENFORCE(coconut::VerifyCredential(params, vk, probe, "self-check"),
                   ErrorCode::kBadSignature,
                   "aggregated credential failed self-verification (indices " +
                       nodes::json(report.used_indices).dump() + ")");

  state.credential = credential;
  state.verify_key = vk;
  state.threshold = threshold;
  state.authorities.clear();
  for (const auto& a : authorities) state.authorities.push_back(a->Name());
  return report;
}

// The election key: all n authorities must publish a key with a valid
// proof of possession.
inline G1Point FetchElectionKey(const groups::PublicParams& params,
                                std::vector<std::shared_ptr<nodes::AuthorityClient>> authorities) {
  std::vector<tally::PublishedKey> keys;
  for (auto& a : authorities) keys.push_back(nodes::AuthorityKeysFromJson(a->GetKeys()).elgamal);
  return tally::AggregateElGamalKeys(params, keys).gamma_agg;
}

// vote is 1 for yes, 0 for no.
inline nodes::VoteSubmission BuildVote(const groups::PublicParams& params, const ClientState& state,
                                       const G1Point& election_key, const std::string& petition_id,
                                       int vote, groups::Rng& rng) {
  PETITION_ENFORCE(state.credential && state.verify_key, ErrorCode::kInvalidArgument,
                   "no credential; run request-cred first");
  coconut::ShowBundle bundle =
      coconut::ProveCredential(params, *state.verify_key, state.m, *state.credential, petition_id, rng);
  tally::EncryptedVote ev =
      tally::EncryptVote(params, election_key, coconut::PetitionBase(petition_id), vote, rng);
  nodes::VoteSubmission v;
  v.petition_id = petition_id;
  v.mpcp = bundle.Serialize();
  v.mpvp = ev.proof.Serialize();
  v.signature = nodes::SignatureBytes(bundle.sigma_prime);
  v.votes = ev.SerializeCiphertexts();
  return v;
}

}  // namespace petition::client
