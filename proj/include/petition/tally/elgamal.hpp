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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "petition/common/error.hpp"
#include "petition/groups/codec.hpp"
#include "petition/groups/params.hpp"
#include "petition/groups/rng.hpp"
#include "petition/nizk/or_proof.hpp"
#include "petition/nizk/sigma.hpp"

namespace petition::tally {

using groups::G1Point;
using groups::PublicParams;
using groups::Scalar;

// Exponential ElGamal in G1: Enc(v) = (g1^k, gamma^k h^v).
struct Ciphertext {
  G1Point a;
  G1Point b;

  bool operator==(const Ciphertext&) const = default;

  Ciphertext operator*(const Ciphertext& o) const { return {a + o.a, b + o.b}; }
};

struct DecryptKeyPair {
  std::string identity;
  Scalar secret;  // d_i
  G1Point gamma;  // g1^d_i
  nizk::KeyProof pok;
};

// What an authority publishes. `pok` holds serialized proof bytes so that a
// missing or garbled proof can be represented and rejected.
struct PublishedKey {
  std::string identity;
  G1Point gamma;
  Bytes pok;
};

struct AggregatedElGamalKey {
  G1Point gamma_agg;
  std::vector<std::string> contributors;
};

struct EncryptedVote {
  Ciphertext vote;
  Ciphertext inverse;
  nizk::BinaryVoteProof proof;

  // a || b || a_not || b_not.
  Bytes SerializeCiphertexts() const {
    Bytes out;
    groups::EncodeTo(out, vote.a);
    groups::EncodeTo(out, vote.b);
    groups::EncodeTo(out, inverse.a);
    groups::EncodeTo(out, inverse.b);
    return out;
  }

  static std::pair<Ciphertext, Ciphertext> DeserializeCiphertexts(ByteView in) {
    groups::Reader r(in);
    Ciphertext vote{r.ReadG1(), r.ReadG1()};
    Ciphertext inverse{r.ReadG1(), r.ReadG1()};
    r.ExpectEnd();
    return {vote, inverse};
  }
};

struct TallyResult {
  uint64_t yes_count = 0;
  uint64_t no_count = 0;

  bool operator==(const TallyResult&) const = default;
};

inline DecryptKeyPair ElGamalKeyGen(const PublicParams& params, std::string_view identity,
                                    groups::Rng& rng) {
  DecryptKeyPair kp;
  kp.identity = std::string(identity);
  kp.secret = groups::RandomScalar(rng);
  kp.gamma = params.g1 * kp.secret;
  kp.pok = nizk::ProveKeyPossession(params, kp.secret, kp.gamma, identity, rng);
  return kp;
}

inline PublishedKey Publish(const DecryptKeyPair& kp) {
  return {kp.identity, kp.gamma, kp.pok.Serialize()};
}

// n-of-n key: the product of all gammas, after every proof of possession
// checks out. A failing key is named in the kRejectedKey error.
inline AggregatedElGamalKey AggregateElGamalKeys(const PublicParams& params,
                                                 std::span<const PublishedKey> keys) {
  PETITION_ENFORCE(!keys.empty(), ErrorCode::kInvalidArgument, "no decryption keys");
  AggregatedElGamalKey agg;
  for (const auto& k : keys) {
    if (!nizk::VerifyKeyPossession(params, k.gamma, k.identity, k.pok)) {
      throw Error(ErrorCode::kRejectedKey,
                  "key of '" + k.identity + "' lacks a valid proof of possession");
    }
    agg.gamma_agg += k.gamma;
    agg.contributors.push_back(k.identity);
  }
  return agg;
}

// enc_not(v) = (a^-1, b^-1 h) = Enc(1 - v) under randomness -k.
inline Ciphertext InverseOf(const Ciphertext& c, const G1Point& h) { return {-c.a, h - c.b}; }

inline EncryptedVote EncryptVote(const PublicParams& params, const G1Point& gamma_agg,
                                 const G1Point& h, int vote, groups::Rng& rng) {
  PETITION_ENFORCE(vote == 0 || vote == 1, ErrorCode::kInvalidArgument, "vote must be 0 or 1");
  Scalar k = groups::RandomScalar(rng);
  EncryptedVote out;
  out.vote = {params.g1 * k, gamma_agg * k + (vote == 1 ? h : G1Point::Identity())};
  out.inverse = InverseOf(out.vote, h);
  out.proof = nizk::ProveBinaryVote(params, vote, k, {gamma_agg, h, out.vote.a, out.vote.b}, rng);
  return out;
}

inline bool VerifyVoteCiphertexts(const PublicParams& params, const G1Point& gamma_agg,
                                  const G1Point& h, const Ciphertext& vote,
                                  const Ciphertext& inverse, const nizk::BinaryVoteProof& proof) {
  if (!(InverseOf(vote, h) == inverse)) return false;
  return nizk::VerifyBinaryVote(params, {gamma_agg, h, vote.a, vote.b}, proof);
}

// Running products of accepted ciphertexts. The empty total is a pair of
// identities with count 0.
struct EncryptedTotal {
  Ciphertext yes;
  Ciphertext no;
  uint64_t count = 0;

  bool operator==(const EncryptedTotal&) const = default;

  // Throws kBadVoteProof when the inverse is not the one derived from
  // `vote` under basis h.
  void Add(const Ciphertext& vote, const Ciphertext& inverse, const G1Point& h) {
    PETITION_ENFORCE(InverseOf(vote, h) == inverse, ErrorCode::kBadVoteProof,
                     "vote inverse is inconsistent with the vote");
    yes = yes * vote;
    no = no * inverse;
    ++count;
  }
};

// One authority's step of the chain: (a, b) -> (a, b a^-d).
inline Ciphertext PartialDecrypt(const Ciphertext& c, const Scalar& secret) {
  return {c.a, c.b - c.a * secret};
}

// Smallest i in [0, cap] with h^i == target, by linear scan.
inline uint64_t RecoverDiscreteLog(const G1Point& target, const G1Point& h, uint64_t cap) {
  G1Point acc = G1Point::Identity();
  for (uint64_t i = 0; i <= cap; ++i) {
    if (acc == target) return i;
    acc += h;
  }
  throw Error(ErrorCode::kOutOfRange, "no exponent within the cap matches the target");
}

// `decrypted` has passed through every authority; its b components are
// h^yes and h^no.
inline TallyResult RecoverTally(const EncryptedTotal& decrypted, const G1Point& h) {
  TallyResult result;
  result.yes_count = RecoverDiscreteLog(decrypted.yes.b, h, decrypted.count);
  result.no_count = RecoverDiscreteLog(decrypted.no.b, h, decrypted.count);
  PETITION_ENFORCE(result.yes_count + result.no_count == decrypted.count,
                   ErrorCode::kTallyCorrupt, "yes + no does not match the vote count");
  return result;
}

}  // namespace petition::tally
