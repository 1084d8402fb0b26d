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
#include <string_view>

#include "petition/common/bytes.hpp"
#include "petition/common/error.hpp"
#include "petition/groups/curve.hpp"

namespace petition::groups {

// Try-and-increment map to G1: x = SHA-256(input || be32(ctr)) mod p for
// ctr = 0, 1, ... until x^3 + 2 is a square; y is the even root. G1 has
// cofactor 1, so the point needs no clearing. The output is never the
// identity. Not constant time; inputs are public.
inline G1Point HashToG1(ByteView input) {
  PETITION_ENFORCE(!input.empty(), ErrorCode::kInvalidArgument, "hash_to_g1 input is empty");
  for (uint32_t ctr = 0; ctr < 1024; ++ctr) {
    Bytes ctr_bytes;
    AppendU32(ctr_bytes, ctr);
    auto digest = Sha256().Update(input).Update(ctr_bytes).Final();
    Fp x = Fp::FromBytesReduced(digest);
    Fp rhs = x.Square() * x + G1Curve::B();
    auto y = rhs.Sqrt();
    if (!y) continue;
    if (y->IsOdd()) *y = -*y;
    return G1Point::FromAffine(x, *y);
  }
  throw Error(ErrorCode::kInvalidArgument, "hash_to_g1 exhausted its counter");
}

inline G1Point HashToG1(std::string_view input) { return HashToG1(AsBytes(input)); }

}  // namespace petition::groups
