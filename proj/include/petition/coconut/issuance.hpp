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
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "petition/coconut/device_key.hpp"
#include "petition/coconut/keys.hpp"
#include "petition/common/error.hpp"
#include "petition/groups/hash_to_curve.hpp"
#include "petition/groups/pairing.hpp"
#include "petition/nizk/sigma.hpp"

namespace petition::coconut {

// sigma = (h, s) with s = h^(x + y m) for a valid credential.
struct Credential {
  G1Point h;
  G1Point s;

  bool operator==(const Credential&) const = default;
};

struct PartialCredential {
  uint32_t index = 0;
  Credential credential;
};

// Lambda = (gamma, c_m, c = (a, b), pi_s) plus the device key and the
// device signature over Body().
struct CredentialRequest {
  G1Point gamma;
  G1Point commitment;
  G1Point cipher_a;
  G1Point cipher_b;
  nizk::IssuanceProof proof;
  G1Point device_key;
  Bytes request_sig;

  // gamma || c_m || a || b || device key || proof, the bytes the device signs.
  Bytes Body() const {
    Bytes out;
    groups::EncodeTo(out, gamma);
    groups::EncodeTo(out, commitment);
    groups::EncodeTo(out, cipher_a);
    groups::EncodeTo(out, cipher_b);
    groups::EncodeTo(out, device_key);
    Append(out, proof.Serialize());
    return out;
  }
};

// Authority output: an ElGamal encryption under gamma of h^(x_i + y_i m).
struct BlindedPartial {
  uint32_t index = 0;
  G1Point h;
  G1Point a_tilde;
  G1Point b_tilde;
};

// h = HashToG1(c_m || device key). Every authority derives it on its own.
inline G1Point RequestBase(const G1Point& commitment, const G1Point& device_key) {
  Bytes input;
  groups::EncodeTo(input, commitment);
  groups::EncodeTo(input, device_key);
  return groups::HashToG1(input);
}

inline nizk::IssuanceStatement IssuanceStatementOf(const CredentialRequest& req,
                                                   const G1Point& h) {
  return {req.gamma, req.commitment, req.cipher_a, req.cipher_b, h, req.device_key};
}

struct PreparedRequest {
  Scalar elgamal_secret;  // d
  CredentialRequest request;
};

// Uses `elgamal_secret` when given, otherwise draws a fresh d.
inline PreparedRequest PrepareBlindSign(const PublicParams& params, const Scalar& m,
                                        const DeviceKeyPair& device, groups::Rng& rng,
                                        std::optional<Scalar> elgamal_secret = std::nullopt) {
  PreparedRequest out;
  out.elgamal_secret = elgamal_secret ? *elgamal_secret : groups::RandomScalar(rng);
  CredentialRequest& req = out.request;
  req.gamma = params.g1 * out.elgamal_secret;
  Scalar o = groups::RandomScalar(rng);
  req.commitment = params.g1 * m + params.h1 * o;
  req.device_key = device.public_key;
  G1Point h = RequestBase(req.commitment, req.device_key);
  Scalar k = groups::RandomScalar(rng);
  req.cipher_a = params.g1 * k;
  req.cipher_b = req.gamma * k + h * m;
  req.proof = nizk::ProveIssuance(params, {out.elgamal_secret, m, o, k},
                                  IssuanceStatementOf(req, h), rng);
  req.request_sig = SignWithDevice(device, req.Body(), rng);
  return out;
}

// Checks the device signature first, then pi_s. Throws kBadSignature or
// kBadProof; nothing is signed on failure.
inline BlindedPartial BlindSign(const PublicParams& params, const AuthoritySigningKey& sk,
                                const CredentialRequest& req) {
  PETITION_ENFORCE(VerifyDeviceSignature(req.device_key, req.Body(), req.request_sig),
                   ErrorCode::kBadSignature, "device signature does not verify");
  G1Point h = RequestBase(req.commitment, req.device_key);
  PETITION_ENFORCE(nizk::VerifyIssuance(params, IssuanceStatementOf(req, h), req.proof),
                   ErrorCode::kBadProof, "issuance proof does not verify");
  return {sk.index, h, req.cipher_a * sk.y, h * sk.x + req.cipher_b * sk.y};
}

// sigma_i = (h, b~ * a~^-d).
inline PartialCredential Unblind(const BlindedPartial& partial, const Scalar& elgamal_secret) {
  return {partial.index, {partial.h, partial.b_tilde - partial.a_tilde * elgamal_secret}};
}

inline Credential AggregateCredential(std::span<const PartialCredential> partials) {
  PETITION_ENFORCE(!partials.empty(), ErrorCode::kInvalidArgument, "no partial credentials");
  std::vector<uint32_t> indices;
  for (const auto& p : partials) {
    PETITION_ENFORCE(p.credential.h == partials[0].credential.h, ErrorCode::kInvalidArgument,
                     "partial credentials carry different h");
    indices.push_back(p.index);
  }
  auto coeffs = LagrangeCoefficients(indices);
  Credential out{partials[0].credential.h, G1Point::Identity()};
  for (size_t i = 0; i < partials.size(); ++i) out.s += partials[i].credential.s * coeffs[i];
  return out;
}

// e(h, alpha beta^m) == e(s, g2), for partial keys and aggregated keys alike.
inline bool CredentialMatches(const G2Point& g2, const G2Point& alpha, const G2Point& beta,
                              const Scalar& m, const Credential& cred) {
  if (cred.h.IsIdentity()) return false;
  std::pair<G1Point, G2Point> terms[] = {{cred.h, alpha + beta * m}, {-cred.s, g2}};
  return groups::MultiPairing(terms).IsIdentity();
}

}  // namespace petition::coconut
