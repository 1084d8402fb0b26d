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

#include <string>
#include <string_view>
#include <utility>

#include "petition/coconut/issuance.hpp"
#include "petition/coconut/keys.hpp"
#include "petition/groups/codec.hpp"
#include "petition/groups/hash_to_curve.hpp"
#include "petition/groups/pairing.hpp"
#include "petition/nizk/sigma.hpp"

namespace petition::coconut {

// g_s: the per-petition base for the double-vote tag and the vote basis.
inline G1Point PetitionBase(std::string_view petition_id) {
  return groups::HashToG1(petition_id);
}

// Theta = (kappa, nu, sigma', pi_v) together with zeta = g_s^m.
//
// Wire layout: kappa (G2) || nu || h' || s' || zeta (G1) || pi_v.
struct ShowBundle {
  G2Point kappa;
  G1Point nu;
  Credential sigma_prime;
  nizk::ShowProof proof;
  G1Point zeta;

  Bytes Serialize() const {
    Bytes out;
    groups::EncodeTo(out, kappa);
    groups::EncodeTo(out, nu);
    groups::EncodeTo(out, sigma_prime.h);
    groups::EncodeTo(out, sigma_prime.s);
    groups::EncodeTo(out, zeta);
    Append(out, proof.Serialize());
    return out;
  }

  static ShowBundle Deserialize(ByteView in) {
    groups::Reader r(in);
    ShowBundle b;
    b.kappa = r.ReadG2();
    b.nu = r.ReadG1();
    b.sigma_prime.h = r.ReadG1();
    b.sigma_prime.s = r.ReadG1();
    b.zeta = r.ReadG1();
    b.proof = nizk::ShowProof::Deserialize(r.Rest());
    return b;
  }
};

inline nizk::ShowStatement ShowStatementOf(const AggregatedVerifyKey& vk, const ShowBundle& b,
                                           std::string_view petition_id) {
  return {vk.alpha,       vk.beta,        b.kappa,
          b.nu,           b.zeta,         b.sigma_prime.h,
          b.sigma_prime.s, PetitionBase(petition_id), std::string(petition_id)};
}

// Randomizes the credential (r' != 0) and proves possession for one petition.
inline ShowBundle ProveCredential(const PublicParams& params, const AggregatedVerifyKey& vk,
                                  const Scalar& m, const Credential& credential,
                                  std::string_view petition_id, groups::Rng& rng) {
  Scalar r_prime = groups::RandomScalar(rng);
  Scalar r = groups::RandomScalar(rng);
  ShowBundle b;
  b.sigma_prime = {credential.h * r_prime, credential.s * r_prime};
  b.kappa = vk.alpha + vk.beta * m + params.g2 * r;
  b.nu = b.sigma_prime.h * r;
  b.zeta = PetitionBase(petition_id) * m;
  b.proof = nizk::ProveShow(params, {m, r}, ShowStatementOf(vk, b, petition_id), rng);
  return b;
}

// h' != 1, pi_v verifies, and e(h', kappa) == e(s' nu, g2).
inline bool VerifyCredential(const PublicParams& params, const AggregatedVerifyKey& vk,
                             const ShowBundle& b, std::string_view petition_id) {
  if (b.sigma_prime.h.IsIdentity() || petition_id.empty()) return false;
  if (!nizk::VerifyShow(params, ShowStatementOf(vk, b, petition_id), b.proof)) return false;
  std::pair<G1Point, G2Point> terms[] = {{b.sigma_prime.h, b.kappa},
                                         {-(b.sigma_prime.s + b.nu), params.g2}};
  return groups::MultiPairing(terms).IsIdentity();
}

inline bool VerifyCredential(const PublicParams& params, const AggregatedVerifyKey& vk,
                             ByteView bundle_bytes, std::string_view petition_id) {
  try {
    return VerifyCredential(params, vk, ShowBundle::Deserialize(bundle_bytes), petition_id);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace petition::coconut
