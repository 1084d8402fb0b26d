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
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "petition/coconut/keys.hpp"
#include "petition/coconut/show.hpp"
#include "petition/groups/params.hpp"
#include "petition/nizk/or_proof.hpp"
#include "petition/nodes/authority.hpp"
#include "petition/nodes/store.hpp"
#include "petition/nodes/wire.hpp"
#include "petition/tally/elgamal.hpp"

namespace petition::nodes {

struct OwnerOptions {
  std::filesystem::path data_dir;
  uint32_t threshold = 1;
  // Per authority and per close attempt; the delay doubles after each try.
  int retry_attempts = 4;
  std::chrono::milliseconds retry_backoff{200};
  uint64_t snapshot_interval = 64;
};

struct PetitionStatus {
  PetitionState state = PetitionState::kOpen;
  uint64_t vote_count = 0;
  size_t spent_zetas = 0;
};

// Keys published by the authorities, reduced to what the owner verifies
// against: the t-of-n credential key and the n-of-n election key.
struct ElectionKeys {
  coconut::AggregatedVerifyKey credential;
  tally::AggregatedElGamalKey election;
};

// Fetches /keys from every authority. The credential key aggregates the t
// lowest indices; the election key combines all n after checking every
// proof of possession.
inline ElectionKeys FetchElectionKeys(const groups::PublicParams& params,
                                      std::span<const std::shared_ptr<AuthorityClient>> authorities,
                                      uint32_t threshold) {
  PETITION_ENFORCE(threshold >= 1 && threshold <= authorities.size(), ErrorCode::kInvalidArgument,
                   "threshold must lie in [1, number of authorities]");
  std::vector<AuthorityKeys> keys;
  for (const auto& a : authorities) keys.push_back(AuthorityKeysFromJson(a->GetKeys()));

  std::vector<coconut::AuthorityVerifyKey> vks;
  std::vector<tally::PublishedKey> published;
  for (const auto& k : keys) {
    vks.push_back(k.vk);
    published.push_back(k.elgamal);
  }
  std::sort(vks.begin(), vks.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  for (size_t i = 1; i < vks.size(); ++i) {
    PETITION_ENFORCE(vks[i].index != vks[i - 1].index, ErrorCode::kInvalidArgument,
                     "two authorities share index " + std::to_string(vks[i].index));
  }
  vks.resize(threshold);
  ElectionKeys out;
  out.credential = coconut::AggregateVerifyKeys(params, vks, threshold);
  out.election = tally::AggregateElGamalKeys(params, published);
  return out;
}

// Petition registry, vote acceptance and tally orchestration.
//
// Votes are verified without locks; only the spent-tag check, the journal
// append and the fold run under the petition's mutex, so they are atomic
// with respect to each other. Closing is serialized by a second mutex and
// walks the authorities in configured order.
class OwnerNode {
 public:
  OwnerNode(groups::PublicParams params, std::vector<std::shared_ptr<AuthorityClient>> authorities,
            OwnerOptions options)
      : params_(std::move(params)),
        authorities_(std::move(authorities)),
        options_(std::move(options)) {}

  // Aggregates keys once and loads persisted petitions.
  void Start() {
    keys_ = FetchElectionKeys(params_, authorities_, options_.threshold);
    std::filesystem::path root = options_.data_dir / "petitions";
    std::filesystem::create_directories(root);
    std::unique_lock lock(registry_mu_);
    for (const auto& entry : std::filesystem::directory_iterator(root)) {
      if (!entry.is_directory()) continue;
      if (!std::filesystem::exists(entry.path() / PetitionStore::kSnapshotName)) {
        // Creation never completed; the petition was never acknowledged.
        std::filesystem::remove_all(entry.path());
        continue;
      }
      auto p = std::make_unique<Petition>(entry.path());
      Bytes name = FromHex(entry.path().filename().string());
      std::string id(name.begin(), name.end());
      p->base = coconut::PetitionBase(id);
      p->record = p->store.Load(p->base);
      PETITION_ENFORCE(p->record.petition_id == id, ErrorCode::kIo,
                       "snapshot in " + entry.path().string() + " names another petition");
      petitions_.emplace(id, std::move(p));
    }
    started_ = true;
  }

  const ElectionKeys& keys() const { return keys_; }
  const groups::PublicParams& params() const { return params_; }

  void CreatePetition(const std::string& petition_id) {
    RequireStarted();
    PETITION_ENFORCE(!petition_id.empty() && petition_id.size() <= kMaxPetitionIdLength,
                     ErrorCode::kInvalidArgument, "petition id must hold 1 to 256 bytes");
    std::unique_lock lock(registry_mu_);
    PETITION_ENFORCE(!petitions_.contains(petition_id), ErrorCode::kPetitionExists,
                     "petition '" + petition_id + "' already exists");
    auto p = std::make_unique<Petition>(options_.data_dir / "petitions" /
                                        PetitionStore::DirectoryName(petition_id));
    p->base = coconut::PetitionBase(petition_id);
    p->record.petition_id = petition_id;
    p->store.Create(p->record);
    petitions_.emplace(petition_id, std::move(p));
  }

  std::vector<std::string> PetitionIds() const {
    std::shared_lock lock(registry_mu_);
    std::vector<std::string> out;
    for (const auto& [id, p] : petitions_) out.push_back(id);
    return out;
  }

  void SubmitVote(const VoteSubmission& v) {
    Petition& p = Find(v.petition_id);
    {
      std::lock_guard lock(p.mu);
      PETITION_ENFORCE(p.record.state == PetitionState::kOpen, ErrorCode::kPetitionClosed,
                       "petition '" + v.petition_id + "' is closed");
    }

    auto bundle = coconut::ShowBundle::Deserialize(v.mpcp);
    auto proof = nizk::BinaryVoteProof::Deserialize(v.mpvp);
    auto [vote, inverse] = tally::EncryptedVote::DeserializeCiphertexts(v.votes);
    PETITION_ENFORCE(v.signature == SignatureBytes(bundle.sigma_prime),
                     ErrorCode::kBadCredentialProof,
                     "signature does not match the credential in MPCP");
    PETITION_ENFORCE(coconut::VerifyCredential(params_, keys_.credential, bundle, v.petition_id),
                     ErrorCode::kBadCredentialProof, "credential proof rejected");
    PETITION_ENFORCE(tally::VerifyVoteCiphertexts(params_, keys_.election.gamma_agg, p.base, vote,
                                                  inverse, proof),
                     ErrorCode::kBadVoteProof, "vote proof rejected");

    Bytes zeta = groups::Encode(bundle.zeta);
    std::lock_guard lock(p.mu);
    PETITION_ENFORCE(p.record.state == PetitionState::kOpen, ErrorCode::kPetitionClosed,
                     "petition '" + v.petition_id + "' is closed");
    PETITION_ENFORCE(!p.record.spent_zetas.contains(zeta), ErrorCode::kDoubleVote,
                     "this credential already voted on '" + v.petition_id + "'");
    p.store.AppendVote(zeta, v.votes);
    p.record.spent_zetas.insert(std::move(zeta));
    p.record.total.Add(vote, inverse, p.base);
    if (options_.snapshot_interval > 0 && p.record.total.count % options_.snapshot_interval == 0) {
      p.store.WriteSnapshot(p.record);
    }
  }

  // Moves the petition through closed and decrypting to finished. An
  // unreachable authority leaves it in decrypting; calling again resumes at
  // the stage that failed.
  tally::TallyResult CloseAndTally(const std::string& petition_id) {
    Petition& p = Find(petition_id);
    std::lock_guard closing(p.tally_mu);
    {
      std::lock_guard lock(p.mu);
      auto& r = p.record;
      if (r.state == PetitionState::kFinished) return *r.result;
      PETITION_ENFORCE(!r.corrupt, ErrorCode::kTallyCorrupt,
                       "tally of '" + petition_id + "' needs operator attention");
      if (r.state == PetitionState::kOpen) {
        r.state = PetitionState::kClosed;
        r.close_time = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
        p.store.WriteSnapshot(r);
      }
      if (r.state == PetitionState::kClosed) {
        r.state = PetitionState::kDecrypting;
        r.next_stage = 0;
        r.partial = r.total;
        p.store.WriteSnapshot(r);
      }
    }

    for (;;) {
      ChainMessage msg;
      {
        std::lock_guard lock(p.mu);
        if (p.record.next_stage >= authorities_.size()) break;
        msg = {petition_id, p.record.next_stage, p.record.partial};
      }
      ChainMessage out = ChainMessageFromJson(CallWithRetry(*authorities_[msg.stage], msg));
      PETITION_ENFORCE(out.petition_id == msg.petition_id && out.stage == msg.stage &&
                           out.total.count == msg.total.count,
                       ErrorCode::kMalformed, "authority answered for another chain message");
      std::lock_guard lock(p.mu);
      p.record.partial = out.total;
      p.record.next_stage = msg.stage + 1;
      p.store.WriteSnapshot(p.record);
    }

    std::lock_guard lock(p.mu);
    tally::TallyResult result;
    try {
      result = tally::RecoverTally(p.record.partial, p.base);
    } catch (const Error& e) {
      p.record.corrupt = true;
      p.store.WriteSnapshot(p.record);
      throw Error(ErrorCode::kTallyCorrupt,
                  "tally of '" + petition_id + "' cannot be recovered: " + e.what());
    }
    p.record.result = result;
    p.record.state = PetitionState::kFinished;
    p.store.WriteSnapshot(p.record);
    return result;
  }

  // nullopt while the petition has not finished.
  std::optional<tally::TallyResult> GetResult(const std::string& petition_id) {
    Petition& p = Find(petition_id);
    std::lock_guard lock(p.mu);
    return p.record.result;
  }

  PetitionStatus Status(const std::string& petition_id) {
    Petition& p = Find(petition_id);
    std::lock_guard lock(p.mu);
    return {p.record.state, p.record.total.count, p.record.spent_zetas.size()};
  }

  PetitionRecord Record(const std::string& petition_id) {
    Petition& p = Find(petition_id);
    std::lock_guard lock(p.mu);
    return p.record;
  }

 private:
  struct Petition {
    explicit Petition(std::filesystem::path dir) : store(std::move(dir)) {}
    std::mutex mu;
    std::mutex tally_mu;
    PetitionStore store;
    PetitionRecord record;
    groups::G1Point base;
  };

  void RequireStarted() const {
    PETITION_ENFORCE(started_, ErrorCode::kInvalidArgument, "owner node not started");
  }

  Petition& Find(const std::string& petition_id) {
    RequireStarted();
    std::shared_lock lock(registry_mu_);
    auto it = petitions_.find(petition_id);
    PETITION_ENFORCE(it != petitions_.end(), ErrorCode::kUnknownPetition,
                     "no petition '" + petition_id + "'");
    return *it->second;
  }

  json CallWithRetry(AuthorityClient& authority, const ChainMessage& msg) {
    auto delay = options_.retry_backoff;
    for (int attempt = 1;; ++attempt) {
      try {
        return authority.Decrypt(ToJson(msg));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kAuthorityUnavailable || attempt >= options_.retry_attempts) {
          throw;
        }
      }
      std::this_thread::sleep_for(delay);
      delay = std::min(delay * 2, std::chrono::milliseconds(5000));
    }
  }

  groups::PublicParams params_;
  std::vector<std::shared_ptr<AuthorityClient>> authorities_;
  OwnerOptions options_;
  ElectionKeys keys_;
  bool started_ = false;
  mutable std::shared_mutex registry_mu_;
  std::map<std::string, std::unique_ptr<Petition>> petitions_;
};

}  // namespace petition::nodes
