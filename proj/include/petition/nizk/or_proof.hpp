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

#include <array>
#include <string_view>

#include "petition/common/error.hpp"
#include "petition/groups/rng.hpp"
#include "petition/nizk/transcript.hpp"

namespace petition::nizk {

inline constexpr std::string_view kBinaryVoteTag = "petition/nizk/binary-vote/v1";

// (a, b) = (g1^k, gamma_agg^k h^v) for some k and v in {0, 1}.
struct BinaryVoteStatement {
  G1Point gamma_agg;
  G1Point h;
  G1Point cipher_a;
  G1Point cipher_b;
};

// Chaum-Pedersen OR proof. Branch j claims (a, b / h^j) is a DH pair over
// (g1, gamma_agg); it accepts iff
//   g1^z_j        = A_j * a^c_j
//   gamma_agg^z_j = B_j * (b / h^j)^c_j
// for both j, and c_0 + c_1 equals the Fiat-Shamir challenge.
struct BinaryVoteProof {
  std::array<G1Point, 2> commit_a;
  std::array<G1Point, 2> commit_b;
  std::array<Scalar, 2> challenge;
  std::array<Scalar, 2> response;

  Bytes Serialize() const {
    return ProofWriter()
        .Put(commit_a[0])
        .Put(commit_b[0])
        .Put(commit_a[1])
        .Put(commit_b[1])
        .Put(challenge[0])
        .Put(challenge[1])
        .Put(response[0])
        .Put(response[1])
        .Finish();
  }

  static BinaryVoteProof Deserialize(ByteView in) {
    ProofReader r(in);
    BinaryVoteProof p;
    p.commit_a[0] = r.GetG1();
    p.commit_b[0] = r.GetG1();
    p.commit_a[1] = r.GetG1();
    p.commit_b[1] = r.GetG1();
    p.challenge[0] = r.GetScalar();
    p.challenge[1] = r.GetScalar();
    p.response[0] = r.GetScalar();
    p.response[1] = r.GetScalar();
    r.ExpectEnd();
    return p;
  }
};

inline Scalar BinaryVoteChallenge(const PublicParams& params, const BinaryVoteStatement& st,
                                  const BinaryVoteProof& proof) {
  return Transcript(kBinaryVoteTag, params)
      .Append(st.gamma_agg)
      .Append(st.h)
      .Append(st.cipher_a)
      .Append(st.cipher_b)
      .Append(proof.commit_a[0])
      .Append(proof.commit_b[0])
      .Append(proof.commit_a[1])
      .Append(proof.commit_b[1])
      .Challenge();
}

// Refuses votes outside {0, 1} with kInvalidArgument.
inline BinaryVoteProof ProveBinaryVote(const PublicParams& params, int vote, const Scalar& k,
                                       const BinaryVoteStatement& st, groups::Rng& rng) {
  PETITION_ENFORCE(vote == 0 || vote == 1, ErrorCode::kInvalidArgument,
                   "vote must be 0 or 1");
  const int real = vote;
  const int fake = 1 - vote;
  BinaryVoteProof proof;

  // Simulated branch: pick its challenge and response, solve for commitments.
  proof.challenge[fake] = groups::RandomScalar(rng);
  proof.response[fake] = groups::RandomScalar(rng);
  G1Point shifted_b = fake == 1 ? st.cipher_b - st.h : st.cipher_b;
  proof.commit_a[fake] = params.g1 * proof.response[fake] - st.cipher_a * proof.challenge[fake];
  proof.commit_b[fake] = st.gamma_agg * proof.response[fake] - shifted_b * proof.challenge[fake];

  Scalar w = groups::RandomScalar(rng);
  proof.commit_a[real] = params.g1 * w;
  proof.commit_b[real] = st.gamma_agg * w;

  Scalar c = BinaryVoteChallenge(params, st, proof);
  proof.challenge[real] = c - proof.challenge[fake];
  proof.response[real] = w + proof.challenge[real] * k;
  return proof;
}

inline bool VerifyBinaryVote(const PublicParams& params, const BinaryVoteStatement& st,
                             const BinaryVoteProof& proof) {
  if (!(proof.challenge[0] + proof.challenge[1] == BinaryVoteChallenge(params, st, proof))) {
    return false;
  }
  for (int j = 0; j < 2; ++j) {
    G1Point shifted_b = j == 1 ? st.cipher_b - st.h : st.cipher_b;
    if (!(params.g1 * proof.response[j] == proof.commit_a[j] + st.cipher_a * proof.challenge[j])) {
      return false;
    }
    if (!(st.gamma_agg * proof.response[j] ==
          proof.commit_b[j] + shifted_b * proof.challenge[j])) {
      return false;
    }
  }
  return true;
}

inline bool VerifyBinaryVote(const PublicParams& params, const BinaryVoteStatement& st,
                             ByteView proof_bytes) {
  try {
    return VerifyBinaryVote(params, st, BinaryVoteProof::Deserialize(proof_bytes));
  } catch (const Error&) {
    return false;
  }
}

}  // namespace petition::nizk
