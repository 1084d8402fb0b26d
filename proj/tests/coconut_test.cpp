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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"

#include "petition/coconut.hpp"
#include "petition/groups.hpp"

namespace petition::coconut {
namespace {

using groups::RandomScalar;
using groups::Rng;

std::vector<std::vector<uint32_t>> Subsets(uint32_t n, uint32_t t) {
  std::vector<std::vector<uint32_t>> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + t, true);
  do {
    std::vector<uint32_t> s;
    for (uint32_t i = 0; i < n; ++i) {
      if (mask[i]) s.push_back(i + 1);
    }
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

class CoconutTest : public ::testing::Test {
 protected:
  PublicParams params_ = groups::Setup("coconut-test");
  Rng rng_ = Rng::FromSeed(21);
  DeviceKeyPair device_ = DeviceKeyPair::Generate(rng_);

  std::vector<PartialCredential> IssueAll(const DealerOutput& dealer, const Scalar& m) {
    auto prepared = PrepareBlindSign(params_, m, device_, rng_);
    std::vector<PartialCredential> partials;
    for (const auto& sk : dealer.signing_keys) {
      partials.push_back(Unblind(BlindSign(params_, sk, prepared.request), prepared.elgamal_secret));
    }
    return partials;
  }

  static std::vector<AuthorityVerifyKey> Pick(const std::vector<AuthorityVerifyKey>& all,
                                              const std::vector<uint32_t>& subset) {
    std::vector<AuthorityVerifyKey> out;
    for (uint32_t i : subset) out.push_back(all[i - 1]);
    return out;
  }

  static std::vector<PartialCredential> Pick(const std::vector<PartialCredential>& all,
                                             const std::vector<uint32_t>& subset) {
    std::vector<PartialCredential> out;
    for (uint32_t i : subset) out.push_back(all[i - 1]);
    return out;
  }
};

TEST_F(CoconutTest, LagrangeCoefficientsHandEvaluated) {
  std::vector<uint32_t> two = {1, 2};
  auto l2 = LagrangeCoefficients(two);
  ASSERT_EQ(l2.size(), 2u);
  EXPECT_EQ(l2[0], Scalar::FromU64(2));
  EXPECT_EQ(l2[1], Scalar::FromI64(-1));

  std::vector<uint32_t> three = {1, 2, 3};
  auto l3 = LagrangeCoefficients(three);
  EXPECT_EQ(l3[0], Scalar::FromU64(3));
  EXPECT_EQ(l3[1], Scalar::FromI64(-3));
  EXPECT_EQ(l3[2], Scalar::FromU64(1));

  std::vector<uint32_t> single = {5};
  EXPECT_EQ(LagrangeCoefficients(single)[0], Scalar::One());

  std::vector<uint32_t> dup = {1, 2, 2};
  EXPECT_THROW(LagrangeCoefficients(dup), Error);
  std::vector<uint32_t> zero = {0, 1};
  EXPECT_THROW(LagrangeCoefficients(zero), Error);
}

TEST_F(CoconutTest, KeyGenParameterErrors) {
  EXPECT_THROW(TtpKeyGen(params_, 3, 2, rng_), Error);
  EXPECT_THROW(TtpKeyGen(params_, 0, 3, rng_), Error);
}

TEST_F(CoconutTest, SingleAuthorityAggregateIsItself) {
  auto dealer = TtpKeyGen(params_, 1, 1, rng_);
  ASSERT_EQ(dealer.signing_keys.size(), 1u);
  auto agg = AggregateVerifyKeys(params_, dealer.verify_keys, 1);
  EXPECT_EQ(agg.alpha, dealer.verify_keys[0].alpha);
  EXPECT_EQ(agg.beta, dealer.verify_keys[0].beta);
}

TEST_F(CoconutTest, AnyTwoOfThreeAggregateAlike) {
  auto dealer = TtpKeyGen(params_, 2, 3, rng_);
  auto a = AggregateVerifyKeys(params_, Pick(dealer.verify_keys, {1, 2}), 2);
  auto b = AggregateVerifyKeys(params_, Pick(dealer.verify_keys, {2, 3}), 2);
  auto c = AggregateVerifyKeys(params_, Pick(dealer.verify_keys, {1, 3}), 2);
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.beta, b.beta);
  EXPECT_EQ(a.alpha, c.alpha);
}

TEST_F(CoconutTest, AggregateKeyPreconditions) {
  auto dealer = TtpKeyGen(params_, 2, 3, rng_);
  EXPECT_THROW(AggregateVerifyKeys(params_, Pick(dealer.verify_keys, {1, 2, 3}), 2), Error);
  EXPECT_THROW(AggregateVerifyKeys(params_, Pick(dealer.verify_keys, {2, 2}), 2), Error);
}

TEST_F(CoconutTest, PrepareBlindSignHidesAttribute) {
  Scalar m = RandomScalar(rng_);
  auto r1 = PrepareBlindSign(params_, m, device_, rng_);
  auto r2 = PrepareBlindSign(params_, m, device_, rng_);
  EXPECT_FALSE(r1.request.commitment == r2.request.commitment);
  EXPECT_FALSE(r1.request.cipher_b == r2.request.cipher_b);
  EXPECT_FALSE(r1.request.cipher_a == r2.request.cipher_a);
}

TEST_F(CoconutTest, PreparedRequestIsValidAndDecrypts) {
  Scalar m = RandomScalar(rng_);
  auto prepared = PrepareBlindSign(params_, m, device_, rng_);
  const auto& req = prepared.request;
  G1Point h = RequestBase(req.commitment, req.device_key);
  EXPECT_TRUE(nizk::VerifyIssuance(params_, IssuanceStatementOf(req, h), req.proof));
  EXPECT_TRUE(VerifyDeviceSignature(device_.public_key, req.Body(), req.request_sig));
  EXPECT_EQ(req.cipher_b - req.cipher_a * prepared.elgamal_secret, h * m);
}

TEST_F(CoconutTest, DeviceSignatureContract) {
  Bytes msg = {1, 2, 3};
  Bytes sig = SignWithDevice(device_, msg, rng_);
  EXPECT_TRUE(VerifyDeviceSignature(device_.public_key, msg, sig));
  Bytes other = {1, 2, 4};
  EXPECT_FALSE(VerifyDeviceSignature(device_.public_key, other, sig));
  auto stranger = DeviceKeyPair::Generate(rng_);
  EXPECT_FALSE(VerifyDeviceSignature(stranger.public_key, msg, sig));
  for (size_t i = 0; i < sig.size(); ++i) {
    Bytes bad = sig;
    bad[i] ^= 0x10;
    EXPECT_FALSE(VerifyDeviceSignature(device_.public_key, msg, bad));
  }
}

TEST_F(CoconutTest, BlindSignHonestPartialSatisfiesPairing) {
  auto dealer = TtpKeyGen(params_, 2, 3, rng_);
  Scalar m = RandomScalar(rng_);
  auto partials = IssueAll(dealer, m);
  for (size_t i = 0; i < partials.size(); ++i) {
    const auto& vk = dealer.verify_keys[i];
    EXPECT_TRUE(CredentialMatches(vk.g2, vk.alpha, vk.beta, m, partials[i].credential));
  }
}

TEST_F(CoconutTest, BlindSignRejectsMutatedCommitment) {
  auto dealer = TtpKeyGen(params_, 1, 1, rng_);
  auto prepared = PrepareBlindSign(params_, RandomScalar(rng_), device_, rng_);
  auto req = prepared.request;
  req.commitment += params_.g1;
  // Re-sign so only the proof is wrong.
  req.request_sig = SignWithDevice(device_, req.Body(), rng_);
  try {
    BlindSign(params_, dealer.signing_keys[0], req);
    FAIL() << "expected rejection";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadProof);
  }
}

TEST_F(CoconutTest, BlindSignChecksSignatureFirst) {
  auto dealer = TtpKeyGen(params_, 1, 1, rng_);
  auto prepared = PrepareBlindSign(params_, RandomScalar(rng_), device_, rng_);
  auto req = prepared.request;
  req.request_sig[5] ^= 1;
  try {
    BlindSign(params_, dealer.signing_keys[0], req);
    FAIL() << "expected rejection";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadSignature);
  }
  // Both wrong: the signature failure wins.
  req.commitment += params_.g1;
  try {
    BlindSign(params_, dealer.signing_keys[0], req);
    FAIL() << "expected rejection";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadSignature);
  }
}

TEST_F(CoconutTest, UnblindWithWrongSecretFails) {
  auto dealer = TtpKeyGen(params_, 1, 1, rng_);
  Scalar m = RandomScalar(rng_);
  auto prepared = PrepareBlindSign(params_, m, device_, rng_);
  auto blinded = BlindSign(params_, dealer.signing_keys[0], prepared.request);
  const auto& vk = dealer.verify_keys[0];
  auto good = Unblind(blinded, prepared.elgamal_secret);
  auto bad = Unblind(blinded, prepared.elgamal_secret + Scalar::One());
  EXPECT_TRUE(CredentialMatches(vk.g2, vk.alpha, vk.beta, m, good.credential));
  EXPECT_FALSE(CredentialMatches(vk.g2, vk.alpha, vk.beta, m, bad.credential));
}

TEST_F(CoconutTest, AllAuthoritiesDeriveTheSameBase) {
  auto dealer = TtpKeyGen(params_, 3, 5, rng_);
  auto prepared = PrepareBlindSign(params_, RandomScalar(rng_), device_, rng_);
  std::set<Bytes> bases;
  for (const auto& sk : dealer.signing_keys) {
    bases.insert(groups::Encode(BlindSign(params_, sk, prepared.request).h));
  }
  EXPECT_EQ(bases.size(), 1u);
}

TEST_F(CoconutTest, AggregateCredentialPreconditions) {
  auto dealer = TtpKeyGen(params_, 2, 3, rng_);
  auto partials = IssueAll(dealer, RandomScalar(rng_));
  auto other = IssueAll(dealer, RandomScalar(rng_));
  std::vector<PartialCredential> mixed = {partials[0], other[1]};
  EXPECT_THROW(AggregateCredential(mixed), Error);
  std::vector<PartialCredential> dup = {partials[0], partials[0]};
  EXPECT_THROW(AggregateCredential(dup), Error);
}

TEST_F(CoconutTest, SinglePartialAggregatesToItself) {
  auto dealer = TtpKeyGen(params_, 1, 1, rng_);
  auto partials = IssueAll(dealer, RandomScalar(rng_));
  EXPECT_EQ(AggregateCredential(partials), partials[0].credential);
}

TEST_F(CoconutTest, ThresholdReconstructionAcrossSubsets) {
  for (int trial = 0; trial < 6; ++trial) {
    uint32_t n = 1 + static_cast<uint32_t>(rng_.Uniform(6));
    uint32_t t = 1 + static_cast<uint32_t>(rng_.Uniform(n));
    auto dealer = TtpKeyGen(params_, t, n, rng_);
    Scalar m = RandomScalar(rng_);
    auto partials = IssueAll(dealer, m);
    std::set<Bytes> creds;
    for (const auto& subset : Subsets(n, t)) {
      Credential cred = AggregateCredential(Pick(partials, subset));
      creds.insert(groups::Encode(cred.s));
      auto vk = AggregateVerifyKeys(params_, Pick(dealer.verify_keys, subset), t);
      EXPECT_TRUE(CredentialMatches(vk.g2, vk.alpha, vk.beta, m, cred));
    }
    EXPECT_EQ(creds.size(), 1u) << "t=" << t << " n=" << n;
    auto vk = AggregateVerifyKeys(params_, Pick(dealer.verify_keys, Subsets(n, t)[0]), t);
    auto bundle = ProveCredential(params_, vk, m, AggregateCredential(Pick(partials, Subsets(n, t)[0])),
                                  "threshold", rng_);
    EXPECT_TRUE(VerifyCredential(params_, vk, bundle, "threshold"));
  }
}

TEST_F(CoconutTest, SubThresholdAggregationFails) {
  auto dealer = TtpKeyGen(params_, 3, 5, rng_);
  Scalar m = RandomScalar(rng_);
  auto partials = IssueAll(dealer, m);
  auto vk = AggregateVerifyKeys(params_, Pick(dealer.verify_keys, {1, 2, 3}), 3);
  Credential short_cred = AggregateCredential(Pick(partials, {1, 2}));
  EXPECT_FALSE(CredentialMatches(vk.g2, vk.alpha, vk.beta, m, short_cred));
}

class ShowTest : public CoconutTest {
 protected:
  void SetUp() override {
    dealer_ = TtpKeyGen(params_, 2, 3, rng_);
    m_ = RandomScalar(rng_);
    auto partials = IssueAll(dealer_, m_);
    cred_ = AggregateCredential(Pick(partials, {1, 2}));
    vk_ = AggregateVerifyKeys(params_, Pick(dealer_.verify_keys, {1, 2}), 2);
  }

  DealerOutput dealer_;
  Scalar m_;
  Credential cred_;
  AggregatedVerifyKey vk_;
};

TEST_F(ShowTest, HonestShowVerifies) {
  auto b = ProveCredential(params_, vk_, m_, cred_, "petition-A", rng_);
  EXPECT_TRUE(VerifyCredential(params_, vk_, b, "petition-A"));
  EXPECT_TRUE(VerifyCredential(params_, vk_, b.Serialize(), "petition-A"));
  EXPECT_FALSE(VerifyCredential(params_, vk_, b, "petition-B"));
}

TEST_F(ShowTest, ShowsAreFreshButTagIsStable) {
  auto b1 = ProveCredential(params_, vk_, m_, cred_, "petition-A", rng_);
  auto b2 = ProveCredential(params_, vk_, m_, cred_, "petition-A", rng_);
  EXPECT_FALSE(b1.kappa == b2.kappa);
  EXPECT_FALSE(b1.nu == b2.nu);
  EXPECT_FALSE(b1.sigma_prime.h == b2.sigma_prime.h);
  EXPECT_FALSE(b1.sigma_prime.s == b2.sigma_prime.s);
  EXPECT_EQ(b1.zeta, b2.zeta);
  auto b3 = ProveCredential(params_, vk_, m_, cred_, "petition-B", rng_);
  EXPECT_FALSE(b1.zeta == b3.zeta);
}

TEST_F(ShowTest, OtherDealerKeyRejects) {
  auto other = TtpKeyGen(params_, 2, 3, rng_);
  auto other_vk = AggregateVerifyKeys(params_, Pick(other.verify_keys, {1, 2}), 2);
  auto b = ProveCredential(params_, vk_, m_, cred_, "petition-A", rng_);
  EXPECT_FALSE(VerifyCredential(params_, other_vk, b, "petition-A"));
}

TEST_F(ShowTest, IdentityHPrimeRejects) {
  auto b = ProveCredential(params_, vk_, m_, cred_, "petition-A", rng_);
  b.sigma_prime.h = G1Point::Identity();
  EXPECT_FALSE(VerifyCredential(params_, vk_, b, "petition-A"));
  // Also with s' and nu collapsed so the pairing equation itself holds.
  b.sigma_prime.s = G1Point::Identity();
  b.nu = G1Point::Identity();
  EXPECT_FALSE(VerifyCredential(params_, vk_, b, "petition-A"));
}

TEST_F(ShowTest, BundleRoundTripAndCorruption) {
  auto b = ProveCredential(params_, vk_, m_, cred_, "petition-A", rng_);
  Bytes bytes = b.Serialize();
  EXPECT_EQ(ShowBundle::Deserialize(bytes).Serialize(), bytes);
  for (size_t i = 0; i < bytes.size(); i += 13) {
    Bytes bad = bytes;
    bad[i] ^= 0x04;
    EXPECT_FALSE(VerifyCredential(params_, vk_, bad, "petition-A")) << i;
  }
}

TEST_F(ShowTest, ForgedCredentialRejected) {
  // A random (h, s) pair is not a signature on m.
  Credential fake{groups::HashToG1("fake"), params_.g1 * RandomScalar(rng_)};
  auto b = ProveCredential(params_, vk_, m_, fake, "petition-A", rng_);
  EXPECT_FALSE(VerifyCredential(params_, vk_, b, "petition-A"));
  // Right credential, wrong attribute.
  auto b2 = ProveCredential(params_, vk_, m_ + Scalar::One(), cred_, "petition-A", rng_);
  EXPECT_FALSE(VerifyCredential(params_, vk_, b2, "petition-A"));
}

}  // namespace
}  // namespace petition::coconut
