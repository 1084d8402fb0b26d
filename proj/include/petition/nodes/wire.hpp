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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "petition/coconut/issuance.hpp"
#include "petition/coconut/keys.hpp"
#include "petition/coconut/show.hpp"
#include "petition/common/bytes.hpp"
#include "petition/common/error.hpp"
#include "petition/groups/codec.hpp"
#include "petition/tally/elgamal.hpp"

// JSON bodies exchanged between clients, authorities and the owner. Binary
// fields are base64 of the groups wire format. Every decoder throws
// kMalformed on a missing field, a wrong type or an undecodable value.
namespace petition::nodes {

using json = nlohmann::json;
using groups::G1Point;
using groups::G2Point;
using groups::Scalar;

inline constexpr size_t kMaxPetitionIdLength = 256;

namespace wire {

inline const json& Field(const json& obj, std::string_view name) {
  PETITION_ENFORCE(obj.is_object(), ErrorCode::kMalformed, "expected a JSON object");
  auto it = obj.find(name);
  PETITION_ENFORCE(it != obj.end(), ErrorCode::kMalformed,
                   "missing field '" + std::string(name) + "'");
  return *it;
}

inline std::string String(const json& obj, std::string_view name) {
  const json& v = Field(obj, name);
  PETITION_ENFORCE(v.is_string(), ErrorCode::kMalformed,
                   "field '" + std::string(name) + "' must be a string");
  return v.get<std::string>();
}

inline uint64_t Unsigned(const json& obj, std::string_view name) {
  const json& v = Field(obj, name);
  PETITION_ENFORCE(v.is_number_unsigned(), ErrorCode::kMalformed,
                   "field '" + std::string(name) + "' must be a non-negative integer");
  return v.get<uint64_t>();
}

inline Bytes Binary(const json& obj, std::string_view name) {
  try {
    return Base64Decode(String(obj, name));
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformed, "field '" + std::string(name) + "': " + e.what());
  }
}

inline G1Point PointG1(const json& obj, std::string_view name) {
  return groups::DecodeG1(Binary(obj, name));
}

inline G2Point PointG2(const json& obj, std::string_view name) {
  return groups::DecodeG2(Binary(obj, name));
}

template <class T>
std::string B64(const T& v) {
  return Base64Encode(groups::Encode(v));
}

inline json Parse(std::string_view body) {
  json out = json::parse(body, nullptr, false);
  PETITION_ENFORCE(!out.is_discarded(), ErrorCode::kMalformed, "body is not valid JSON");
  return out;
}

inline std::string PetitionId(const json& obj) {
  std::string id = String(obj, "petitionID");
  PETITION_ENFORCE(!id.empty() && id.size() <= kMaxPetitionIdLength, ErrorCode::kMalformed,
                   "petitionID must hold 1 to 256 bytes");
  return id;
}

}  // namespace wire

inline json ErrorBody(const Error& e) {
  return {{"error", std::string(e.code_name())}, {"message", e.what()}};
}

inline json ErrorBody(ErrorCode code, std::string_view message) {
  return {{"error", std::string(ErrorCodeName(code))}, {"message", std::string(message)}};
}

// Rebuilds the Error carried in an error body; unknown codes map to kMalformed.
inline Error ErrorFromBody(const json& body) {
  if (body.is_object() && body.contains("error") && body["error"].is_string()) {
    std::string message = body.value("message", std::string());
    ErrorCode code = ErrorCode::kMalformed;
    ErrorCodeFromName(body["error"].get<std::string>(), &code);
    return Error(code, message);
  }
  return Error(ErrorCode::kMalformed, "unrecognized error response");
}

// Credential request. pk_cred_bytes is c_m, enc_sk_bytes is a || b.
inline json ToJson(const coconut::CredentialRequest& req) {
  Bytes cipher = groups::Encode(req.cipher_a);
  Append(cipher, groups::Encode(req.cipher_b));
  return {
      {"gamma_bytes", wire::B64(req.gamma)},
      {"pk_cred_bytes", wire::B64(req.commitment)},
      {"pk_client_bytes", wire::B64(req.device_key)},
      {"enc_sk_bytes", Base64Encode(cipher)},
      {"requestSig", Base64Encode(req.request_sig)},
      {"proof", Base64Encode(req.proof.Serialize())},
  };
}

inline coconut::CredentialRequest CredentialRequestFromJson(const json& j) {
  coconut::CredentialRequest req;
  req.gamma = wire::PointG1(j, "gamma_bytes");
  req.commitment = wire::PointG1(j, "pk_cred_bytes");
  req.device_key = wire::PointG1(j, "pk_client_bytes");
  Bytes cipher = wire::Binary(j, "enc_sk_bytes");
  groups::Reader r(cipher);
  req.cipher_a = r.ReadG1();
  req.cipher_b = r.ReadG1();
  r.ExpectEnd();
  req.request_sig = wire::Binary(j, "requestSig");
  PETITION_ENFORCE(req.request_sig.size() == coconut::kDeviceSignatureSize, ErrorCode::kMalformed,
                   "requestSig must be 64 bytes");
  req.proof = nizk::IssuanceProof::Deserialize(wire::Binary(j, "proof"));
  return req;
}

// Blind-sign response: h and the encrypted partial (a~, b~).
inline json ToJson(const coconut::BlindedPartial& p) {
  Bytes cipher = groups::Encode(p.a_tilde);
  Append(cipher, groups::Encode(p.b_tilde));
  return {{"index", p.index}, {"h", wire::B64(p.h)}, {"enc_sig_bytes", Base64Encode(cipher)}};
}

inline coconut::BlindedPartial BlindedPartialFromJson(const json& j) {
  coconut::BlindedPartial p;
  uint64_t index = wire::Unsigned(j, "index");
  PETITION_ENFORCE(index >= 1 && index <= UINT32_MAX, ErrorCode::kMalformed, "bad index");
  p.index = static_cast<uint32_t>(index);
  p.h = wire::PointG1(j, "h");
  Bytes cipher = wire::Binary(j, "enc_sig_bytes");
  groups::Reader r(cipher);
  p.a_tilde = r.ReadG1();
  p.b_tilde = r.ReadG1();
  r.ExpectEnd();
  return p;
}

// What GET /keys returns.
struct AuthorityKeys {
  coconut::AuthorityVerifyKey vk;
  tally::PublishedKey elgamal;

  bool operator==(const AuthorityKeys& o) const {
    return vk == o.vk && elgamal.identity == o.elgamal.identity &&
           elgamal.gamma == o.elgamal.gamma && elgamal.pok == o.elgamal.pok;
  }
};

inline json ToJson(const coconut::AuthorityVerifyKey& vk) {
  return {{"index", vk.index},
          {"g2", wire::B64(vk.g2)},
          {"alpha", wire::B64(vk.alpha)},
          {"beta", wire::B64(vk.beta)}};
}

inline coconut::AuthorityVerifyKey VerifyKeyFromJson(const json& j) {
  coconut::AuthorityVerifyKey vk;
  uint64_t index = wire::Unsigned(j, "index");
  PETITION_ENFORCE(index >= 1 && index <= UINT32_MAX, ErrorCode::kMalformed, "bad index");
  vk.index = static_cast<uint32_t>(index);
  vk.g2 = wire::PointG2(j, "g2");
  vk.alpha = wire::PointG2(j, "alpha");
  vk.beta = wire::PointG2(j, "beta");
  return vk;
}

inline json ToJson(const AuthorityKeys& k) {
  return {{"index", k.vk.index},
          {"identity", k.elgamal.identity},
          {"vk", ToJson(k.vk)},
          {"gamma", wire::B64(k.elgamal.gamma)},
          {"pok", Base64Encode(k.elgamal.pok)}};
}

inline AuthorityKeys AuthorityKeysFromJson(const json& j) {
  AuthorityKeys k;
  k.vk = VerifyKeyFromJson(wire::Field(j, "vk"));
  PETITION_ENFORCE(wire::Unsigned(j, "index") == k.vk.index, ErrorCode::kMalformed,
                   "index does not match the verification key");
  k.elgamal.identity = wire::String(j, "identity");
  k.elgamal.gamma = wire::PointG1(j, "gamma");
  k.elgamal.pok = wire::Binary(j, "pok");
  return k;
}

// Vote message: MPCP is the show bundle, MPVP the binary-vote proof,
// signature the randomized credential sigma', votes a || b || a_not || b_not.
struct VoteSubmission {
  std::string petition_id;
  Bytes mpcp;
  Bytes mpvp;
  Bytes signature;
  Bytes votes;
};

inline json ToJson(const VoteSubmission& v) {
  return {{"MPCP", Base64Encode(v.mpcp)},
          {"MPVP", Base64Encode(v.mpvp)},
          {"petitionID", v.petition_id},
          {"signature", Base64Encode(v.signature)},
          {"votes", Base64Encode(v.votes)}};
}

inline VoteSubmission VoteSubmissionFromJson(const json& j) {
  VoteSubmission v;
  v.petition_id = wire::PetitionId(j);
  v.mpcp = wire::Binary(j, "MPCP");
  v.mpvp = wire::Binary(j, "MPVP");
  v.signature = wire::Binary(j, "signature");
  v.votes = wire::Binary(j, "votes");
  return v;
}

// Encoding of sigma' used in the signature field: h' || s'.
inline Bytes SignatureBytes(const coconut::Credential& sigma) {
  Bytes out = groups::Encode(sigma.h);
  Append(out, groups::Encode(sigma.s));
  return out;
}

// Decryption chain message.
struct ChainMessage {
  std::string petition_id;
  uint32_t stage = 0;
  tally::EncryptedTotal total;
};

inline std::string EncodeCiphertext(const tally::Ciphertext& c) {
  Bytes out = groups::Encode(c.a);
  Append(out, groups::Encode(c.b));
  return Base64Encode(out);
}

inline tally::Ciphertext CiphertextFromJson(const json& j, std::string_view name) {
  Bytes raw = wire::Binary(j, name);
  groups::Reader r(raw);
  tally::Ciphertext c{r.ReadG1(), r.ReadG1()};
  r.ExpectEnd();
  return c;
}

inline json ToJson(const ChainMessage& m) {
  return {{"petitionID", m.petition_id},
          {"stage", m.stage},
          {"yes", EncodeCiphertext(m.total.yes)},
          {"no", EncodeCiphertext(m.total.no)},
          {"count", m.total.count}};
}

inline ChainMessage ChainMessageFromJson(const json& j) {
  ChainMessage m;
  m.petition_id = wire::PetitionId(j);
  uint64_t stage = wire::Unsigned(j, "stage");
  PETITION_ENFORCE(stage <= UINT32_MAX, ErrorCode::kMalformed, "stage out of range");
  m.stage = static_cast<uint32_t>(stage);
  m.total.yes = CiphertextFromJson(j, "yes");
  m.total.no = CiphertextFromJson(j, "no");
  m.total.count = wire::Unsigned(j, "count");
  return m;
}

// GET /petitions/{id}/result body.
inline json ResultJson(std::string_view petition_id,
                       const std::optional<tally::TallyResult>& result) {
  if (!result) return {{"petitionID", petition_id}, {"status", "pending"}};
  return {{"petitionID", petition_id},
          {"status", "finished"},
          {"yes", result->yes_count},
          {"no", result->no_count}};
}

inline std::optional<tally::TallyResult> ResultFromJson(const json& j) {
  std::string status = wire::String(j, "status");
  if (status == "pending") return std::nullopt;
  PETITION_ENFORCE(status == "finished", ErrorCode::kMalformed, "unknown result status");
  return tally::TallyResult{wire::Unsigned(j, "yes"), wire::Unsigned(j, "no")};
}

}  // namespace petition::nodes
