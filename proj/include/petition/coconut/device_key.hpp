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

#include "petition/common/bytes.hpp"
#include "petition/common/error.hpp"
#include "petition/groups/codec.hpp"
#include "petition/groups/curve.hpp"
#include "petition/groups/rng.hpp"

namespace petition::coconut {

using groups::G1Point;
using groups::Scalar;

inline constexpr size_t kDeviceSignatureSize = 64;

// ECDSA over G1 of Fp254BNb with SHA-256. Signatures are r || s, each a
// 32-byte big-endian scalar.
struct DeviceKeyPair {
  Scalar secret;
  G1Point public_key;

  static DeviceKeyPair Generate(groups::Rng& rng) {
    DeviceKeyPair kp;
    kp.secret = groups::RandomScalar(rng);
    kp.public_key = G1Point::Generator() * kp.secret;
    return kp;
  }

  static DeviceKeyPair FromSecret(const Scalar& secret) {
    return {secret, G1Point::Generator() * secret};
  }
};

namespace detail {

inline Scalar MessageScalar(ByteView message) {
  return Scalar::FromBytesReduced(Sha256::Hash(message));
}

inline Scalar XCoordinateModOrder(const G1Point& p) {
  return Scalar::FromU256Reduced(p.ToAffine().first.ToCanonical());
}

}  // namespace detail

inline Bytes SignWithDevice(const DeviceKeyPair& key, ByteView message, groups::Rng& rng) {
  Scalar e = detail::MessageScalar(message);
  for (;;) {
    Scalar k = groups::RandomScalar(rng);
    Scalar r = detail::XCoordinateModOrder(G1Point::Generator() * k);
    if (r.IsZero()) continue;
    Scalar s = k.Inverse() * (e + r * key.secret);
    if (s.IsZero()) continue;
    Bytes sig;
    groups::EncodeTo(sig, r);
    groups::EncodeTo(sig, s);
    return sig;
  }
}

inline bool VerifyDeviceSignature(const G1Point& public_key, ByteView message,
                                  ByteView signature) {
  if (signature.size() != kDeviceSignatureSize || public_key.IsIdentity()) return false;
  auto r = Scalar::FromBytes(signature.first<32>());
  auto s = Scalar::FromBytes(signature.subspan<32, 32>());
  if (!r || !s || r->IsZero() || s->IsZero()) return false;
  Scalar w = s->Inverse();
  Scalar e = detail::MessageScalar(message);
  G1Point x = G1Point::Generator() * (e * w) + public_key * (*r * w);
  if (x.IsIdentity()) return false;
  return detail::XCoordinateModOrder(x) == *r;
}

}  // namespace petition::coconut
