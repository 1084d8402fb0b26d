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

#include "petition/common/bytes.hpp"
#include "petition/groups/codec.hpp"
#include "petition/groups/curve.hpp"
#include "petition/groups/field.hpp"
#include "petition/groups/hash_to_curve.hpp"

namespace petition::groups {

// Public bilinear-group context: generators g1, h1 of G1 and g2 of G2 on
// Fp254BNb. h1 comes from hashing, so its discrete log to g1 is unknown.
struct PublicParams {
  G1Point g1;
  G1Point h1;
  G2Point g2;
  std::string tag;
  // SHA-256 of g1 || h1 || g2; mixed into every Fiat-Shamir challenge.
  Sha256::Digest digest{};

  static U256 Order() { return FrParams::kModulus; }

  Bytes Serialize() const {
    Bytes out;
    EncodeTo(out, g1);
    EncodeTo(out, h1);
    EncodeTo(out, g2);
    return out;
  }

  bool operator==(const PublicParams& o) const { return Serialize() == o.Serialize(); }
};

inline PublicParams Setup(std::string_view security_tag) {
  PublicParams params;
  params.g1 = G1Point::Generator();
  params.g2 = G2Point::Generator();
  std::string seed = "h1-gen";
  seed.append(security_tag);
  params.h1 = HashToG1(seed);
  params.tag = std::string(security_tag);
  params.digest = Sha256::Hash(params.Serialize());
  return params;
}

}  // namespace petition::groups
