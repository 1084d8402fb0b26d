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

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "petition/common/error.hpp"
#include "petition/groups/codec.hpp"
#include "petition/groups/params.hpp"
#include "petition/groups/rng.hpp"

namespace petition::coconut {

using groups::G1Point;
using groups::G2Point;
using groups::PublicParams;
using groups::Scalar;

// Authority share (x_i, y_i) = (v(i), w(i)) of the dealer's polynomials.
struct AuthoritySigningKey {
  uint32_t index = 0;
  Scalar x;
  Scalar y;
};

struct AuthorityVerifyKey {
  uint32_t index = 0;
  G2Point g2;
  G2Point alpha;  // g2^x_i
  G2Point beta;   // g2^y_i

  bool operator==(const AuthorityVerifyKey&) const = default;
};

struct AggregatedVerifyKey {
  G2Point g2;
  G2Point alpha;
  G2Point beta;
  std::vector<uint32_t> subset;

  bool operator==(const AggregatedVerifyKey&) const = default;
};

struct DealerOutput {
  std::vector<AuthoritySigningKey> signing_keys;
  std::vector<AuthorityVerifyKey> verify_keys;
};

inline AuthorityVerifyKey DeriveVerifyKey(const PublicParams& params,
                                          const AuthoritySigningKey& sk) {
  return {sk.index, params.g2, params.g2 * sk.x, params.g2 * sk.y};
}

// Trusted dealer: random polynomials v, w of degree t-1; authority i gets
// (v(i), w(i)). The polynomials do not outlive this call.
inline DealerOutput TtpKeyGen(const PublicParams& params, uint32_t threshold, uint32_t authorities,
                              groups::Rng& rng) {
  PETITION_ENFORCE(threshold >= 1 && threshold <= authorities, ErrorCode::kInvalidArgument,
                   "threshold must satisfy 1 <= t <= n");
  std::vector<Scalar> v(threshold), w(threshold);
  for (uint32_t j = 0; j < threshold; ++j) {
    v[j] = groups::RandomScalar(rng);
    w[j] = groups::RandomScalar(rng);
  }
  auto eval = [](const std::vector<Scalar>& poly, uint32_t at) {
    Scalar x = Scalar::FromU64(at);
    Scalar acc;
    for (size_t j = poly.size(); j-- > 0;) acc = acc * x + poly[j];
    return acc;
  };
  DealerOutput out;
  for (uint32_t i = 1; i <= authorities; ++i) {
    AuthoritySigningKey sk{i, eval(v, i), eval(w, i)};
    out.verify_keys.push_back(DeriveVerifyKey(params, sk));
    out.signing_keys.push_back(sk);
  }
  std::fill(v.begin(), v.end(), Scalar());
  std::fill(w.begin(), w.end(), Scalar());
  return out;
}

// Lagrange basis at zero: l_i = prod_{j != i} (0 - j) / (i - j) mod r.
inline std::vector<Scalar> LagrangeCoefficients(std::span<const uint32_t> indices) {
  std::set<uint32_t> seen;
  for (uint32_t i : indices) {
    PETITION_ENFORCE(i >= 1, ErrorCode::kInvalidArgument, "authority indices start at 1");
    PETITION_ENFORCE(seen.insert(i).second, ErrorCode::kInvalidArgument,
                     "duplicate authority index");
  }
  std::vector<Scalar> out;
  out.reserve(indices.size());
  for (uint32_t i : indices) {
    Scalar num = Scalar::One();
    Scalar den = Scalar::One();
    for (uint32_t j : indices) {
      if (j == i) continue;
      num *= -Scalar::FromU64(j);
      den *= Scalar::FromU64(i) - Scalar::FromU64(j);
    }
    out.push_back(num * den.Inverse());
  }
  return out;
}

// Combine exactly `threshold` verification keys with Lagrange weights.
inline AggregatedVerifyKey AggregateVerifyKeys(const PublicParams& params,
                                               std::span<const AuthorityVerifyKey> keys,
                                               uint32_t threshold) {
  PETITION_ENFORCE(keys.size() == threshold, ErrorCode::kInvalidArgument,
                   "aggregation needs exactly t verification keys");
  std::vector<uint32_t> indices;
  for (const auto& k : keys) indices.push_back(k.index);
  auto coeffs = LagrangeCoefficients(indices);
  AggregatedVerifyKey agg;
  agg.g2 = params.g2;
  for (size_t i = 0; i < keys.size(); ++i) {
    agg.alpha += keys[i].alpha * coeffs[i];
    agg.beta += keys[i].beta * coeffs[i];
  }
  agg.subset = indices;
  return agg;
}

}  // namespace petition::coconut
