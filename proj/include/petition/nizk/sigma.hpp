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

#include "petition/common/error.hpp"
#include "petition/groups/rng.hpp"
#include "petition/nizk/transcript.hpp"

// Schnorr-style proofs in challenge/response form. Each response is
// w - c * witness; the verifier rebuilds every commitment from the responses
// and the challenge and accepts iff hashing them reproduces the challenge.
namespace petition::nizk {

inline constexpr std::string_view kIssuanceTag = "petition/nizk/issuance/v1";
inline constexpr std::string_view kShowTag = "petition/nizk/show/v1";
inline constexpr std::string_view kKeyTag = "petition/nizk/key-possession/v1";

// ---------------------------------------------------------------------------
// Issuance: knowledge of (d, m, o, k) with
//   gamma = g1^d,  c_m = g1^m h1^o,  a = g1^k,  b = gamma^k h^m.
// The device key is hashed into the challenge so a request cannot be
// re-bound to another device.

struct IssuanceStatement {
  G1Point gamma;
  G1Point commitment;
  G1Point cipher_a;
  G1Point cipher_b;
  G1Point h;
  G1Point device_key;
};

struct IssuanceWitness {
  Scalar d, m, o, k;
};

struct IssuanceProof {
  Scalar challenge;
  Scalar r_d, r_m, r_o, r_k;

  Bytes Serialize() const {
    return ProofWriter().Put(challenge).Put(r_d).Put(r_m).Put(r_o).Put(r_k).Finish();
  }

  static IssuanceProof Deserialize(ByteView in) {
    ProofReader r(in);
    IssuanceProof p;
    p.challenge = r.GetScalar();
    p.r_d = r.GetScalar();
    p.r_m = r.GetScalar();
    p.r_o = r.GetScalar();
    p.r_k = r.GetScalar();
    r.ExpectEnd();
    return p;
  }
};

namespace detail {

inline Scalar IssuanceChallenge(const PublicParams& params, const IssuanceStatement& st,
                                const G1Point& t_gamma, const G1Point& t_commitment,
                                const G1Point& t_a, const G1Point& t_b) {
  return Transcript(kIssuanceTag, params)
      .Append(st.gamma)
      .Append(st.commitment)
      .Append(st.cipher_a)
      .Append(st.cipher_b)
      .Append(st.h)
      .Append(st.device_key)
      .Append(t_gamma)
      .Append(t_commitment)
      .Append(t_a)
      .Append(t_b)
      .Challenge();
}

}  // namespace detail

inline IssuanceProof ProveIssuance(const PublicParams& params, const IssuanceWitness& w,
                                   const IssuanceStatement& st, groups::Rng& rng) {
  Scalar wd = groups::RandomScalar(rng);
  Scalar wm = groups::RandomScalar(rng);
  Scalar wo = groups::RandomScalar(rng);
  Scalar wk = groups::RandomScalar(rng);
  G1Point t_gamma = params.g1 * wd;
  G1Point t_commitment = params.g1 * wm + params.h1 * wo;
  G1Point t_a = params.g1 * wk;
  G1Point t_b = st.gamma * wk + st.h * wm;
  IssuanceProof proof;
  proof.challenge = detail::IssuanceChallenge(params, st, t_gamma, t_commitment, t_a, t_b);
  proof.r_d = wd - proof.challenge * w.d;
  proof.r_m = wm - proof.challenge * w.m;
  proof.r_o = wo - proof.challenge * w.o;
  proof.r_k = wk - proof.challenge * w.k;
  return proof;
}

inline bool VerifyIssuance(const PublicParams& params, const IssuanceStatement& st,
                           const IssuanceProof& proof) {
  const Scalar& c = proof.challenge;
  G1Point t_gamma = params.g1 * proof.r_d + st.gamma * c;
  G1Point t_commitment = params.g1 * proof.r_m + params.h1 * proof.r_o + st.commitment * c;
  G1Point t_a = params.g1 * proof.r_k + st.cipher_a * c;
  G1Point t_b = st.gamma * proof.r_k + st.h * proof.r_m + st.cipher_b * c;
  return detail::IssuanceChallenge(params, st, t_gamma, t_commitment, t_a, t_b) == c;
}

inline bool VerifyIssuance(const PublicParams& params, const IssuanceStatement& st,
                           ByteView proof_bytes) {
  try {
    return VerifyIssuance(params, st, IssuanceProof::Deserialize(proof_bytes));
  } catch (const Error&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Credential show: knowledge of (m, r) with
//   kappa = alpha beta^m g2^r,  nu = h'^r,  zeta = g_s^m.
// The challenge also binds s' and the petition id.

struct ShowStatement {
  G2Point alpha;
  G2Point beta;
  G2Point kappa;
  G1Point nu;
  G1Point zeta;
  G1Point h_prime;
  G1Point s_prime;
  G1Point petition_base;  // g_s
  std::string petition_id;
};

struct ShowWitness {
  Scalar m, r;
};

struct ShowProof {
  Scalar challenge;
  Scalar r_m, r_r;

  Bytes Serialize() const { return ProofWriter().Put(challenge).Put(r_m).Put(r_r).Finish(); }

  static ShowProof Deserialize(ByteView in) {
    ProofReader r(in);
    ShowProof p;
    p.challenge = r.GetScalar();
    p.r_m = r.GetScalar();
    p.r_r = r.GetScalar();
    r.ExpectEnd();
    return p;
  }
};

namespace detail {

inline Scalar ShowChallenge(const PublicParams& params, const ShowStatement& st,
                            const G2Point& t_kappa, const G1Point& t_nu, const G1Point& t_zeta) {
  return Transcript(kShowTag, params)
      .Append(st.alpha)
      .Append(st.beta)
      .Append(st.kappa)
      .Append(st.nu)
      .Append(st.zeta)
      .Append(st.h_prime)
      .Append(st.s_prime)
      .Append(st.petition_base)
      .AppendBytes(AsBytes(st.petition_id))
      .Append(t_kappa)
      .Append(t_nu)
      .Append(t_zeta)
      .Challenge();
}

}  // namespace detail

inline ShowProof ProveShow(const PublicParams& params, const ShowWitness& w,
                           const ShowStatement& st, groups::Rng& rng) {
  Scalar wm = groups::RandomScalar(rng);
  Scalar wr = groups::RandomScalar(rng);
  G2Point t_kappa = st.alpha + st.beta * wm + params.g2 * wr;
  G1Point t_nu = st.h_prime * wr;
  G1Point t_zeta = st.petition_base * wm;
  ShowProof proof;
  proof.challenge = detail::ShowChallenge(params, st, t_kappa, t_nu, t_zeta);
  proof.r_m = wm - proof.challenge * w.m;
  proof.r_r = wr - proof.challenge * w.r;
  return proof;
}

inline bool VerifyShow(const PublicParams& params, const ShowStatement& st,
                       const ShowProof& proof) {
  const Scalar& c = proof.challenge;
  G2Point t_kappa = st.kappa * c + st.alpha * (Scalar::One() - c) + st.beta * proof.r_m +
                    params.g2 * proof.r_r;
  G1Point t_nu = st.nu * c + st.h_prime * proof.r_r;
  G1Point t_zeta = st.zeta * c + st.petition_base * proof.r_m;
  return detail::ShowChallenge(params, st, t_kappa, t_nu, t_zeta) == c;
}

inline bool VerifyShow(const PublicParams& params, const ShowStatement& st,
                       ByteView proof_bytes) {
  try {
    return VerifyShow(params, st, ShowProof::Deserialize(proof_bytes));
  } catch (const Error&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Key possession: knowledge of d with gamma = g1^d, domain separated by the
// signer identity so a proof cannot be replayed under another name.

struct KeyProof {
  Scalar challenge;
  Scalar r_d;

  Bytes Serialize() const { return ProofWriter().Put(challenge).Put(r_d).Finish(); }

  static KeyProof Deserialize(ByteView in) {
    ProofReader r(in);
    KeyProof p;
    p.challenge = r.GetScalar();
    p.r_d = r.GetScalar();
    r.ExpectEnd();
    return p;
  }
};

namespace detail {

inline Scalar KeyChallenge(const PublicParams& params, const G1Point& gamma,
                           std::string_view signer_id, const G1Point& t_gamma) {
  return Transcript(kKeyTag, params)
      .AppendBytes(AsBytes(signer_id))
      .Append(gamma)
      .Append(t_gamma)
      .Challenge();
}

}  // namespace detail

inline KeyProof ProveKeyPossession(const PublicParams& params, const Scalar& d,
                                   const G1Point& gamma, std::string_view signer_id,
                                   groups::Rng& rng) {
  Scalar wd = groups::RandomScalar(rng);
  KeyProof proof;
  proof.challenge = detail::KeyChallenge(params, gamma, signer_id, params.g1 * wd);
  proof.r_d = wd - proof.challenge * d;
  return proof;
}

inline bool VerifyKeyPossession(const PublicParams& params, const G1Point& gamma,
                                std::string_view signer_id, const KeyProof& proof) {
  if (gamma.IsIdentity()) return false;
  G1Point t_gamma = params.g1 * proof.r_d + gamma * proof.challenge;
  return detail::KeyChallenge(params, gamma, signer_id, t_gamma) == proof.challenge;
}

inline bool VerifyKeyPossession(const PublicParams& params, const G1Point& gamma,
                                std::string_view signer_id, ByteView proof_bytes) {
  try {
    return VerifyKeyPossession(params, gamma, signer_id, KeyProof::Deserialize(proof_bytes));
  } catch (const Error&) {
    return false;
  }
}

}  // namespace petition::nizk
