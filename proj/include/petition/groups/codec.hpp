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
#include <cstdint>
#include <span>
#include <string>

#include "petition/common/bytes.hpp"
#include "petition/common/error.hpp"
#include "petition/groups/curve.hpp"
#include "petition/groups/pairing.hpp"

// Canonical wire encodings shared by every module.
//
//   Scalar : 32-byte big-endian, value < r.
//   G1     : 65 bytes, 0x04 || x || y, coordinates 32-byte big-endian.
//            The identity is 65 zero bytes.
//   G2     : 129 bytes, 0x04 || x.c0 || x.c1 || y.c0 || y.c1.
//            The identity is 129 zero bytes.
//   GT     : 384 bytes, the twelve Fp coefficients over 1, w, ..., w^5
//            (each Fp2 as c0 || c1).
//
// Decoding rejects non-canonical field elements, off-curve points and
// points outside the order-r subgroup.
namespace petition::groups {

inline constexpr size_t kScalarSize = 32;
inline constexpr size_t kG1Size = 65;
inline constexpr size_t kG2Size = 129;
inline constexpr size_t kGTSize = 384;

namespace detail {

inline void PutFp(Bytes& out, const Fp& v) { Append(out, v.ToBytes()); }

inline Fp TakeFp(ByteView in) {
  auto v = Fp::FromBytes(in.first<32>());
  PETITION_ENFORCE(v.has_value(), ErrorCode::kMalformed, "non-canonical field element");
  return *v;
}

inline bool AllZero(ByteView in) {
  for (uint8_t b : in) {
    if (b) return false;
  }
  return true;
}

}  // namespace detail

inline void EncodeTo(Bytes& out, const Scalar& s) { Append(out, s.ToBytes()); }

inline void EncodeTo(Bytes& out, const G1Point& p) {
  if (p.IsIdentity()) {
    out.insert(out.end(), kG1Size, 0);
    return;
  }
  auto [x, y] = p.ToAffine();
  out.push_back(0x04);
  detail::PutFp(out, x);
  detail::PutFp(out, y);
}

inline void EncodeTo(Bytes& out, const G2Point& p) {
  if (p.IsIdentity()) {
    out.insert(out.end(), kG2Size, 0);
    return;
  }
  auto [x, y] = p.ToAffine();
  out.push_back(0x04);
  detail::PutFp(out, x.c0);
  detail::PutFp(out, x.c1);
  detail::PutFp(out, y.c0);
  detail::PutFp(out, y.c1);
}

inline void EncodeTo(Bytes& out, const GTElement& e) {
  for (const Fp2& c : e.value().Coefficients()) {
    detail::PutFp(out, c.c0);
    detail::PutFp(out, c.c1);
  }
}

template <class T>
Bytes Encode(const T& v) {
  Bytes out;
  EncodeTo(out, v);
  return out;
}

inline Scalar DecodeScalar(ByteView in) {
  PETITION_ENFORCE(in.size() == kScalarSize, ErrorCode::kMalformed, "scalar must be 32 bytes");
  auto s = Scalar::FromBytes(in.first<32>());
  PETITION_ENFORCE(s.has_value(), ErrorCode::kMalformed, "non-canonical scalar");
  return *s;
}

inline G1Point DecodeG1(ByteView in) {
  PETITION_ENFORCE(in.size() == kG1Size, ErrorCode::kMalformed, "G1 point must be 65 bytes");
  if (detail::AllZero(in)) return G1Point::Identity();
  PETITION_ENFORCE(in[0] == 0x04, ErrorCode::kMalformed, "bad G1 prefix");
  Fp x = detail::TakeFp(in.subspan(1, 32));
  Fp y = detail::TakeFp(in.subspan(33, 32));
  PETITION_ENFORCE(G1Point::IsOnCurve(x, y), ErrorCode::kMalformed, "G1 point not on curve");
  // Cofactor 1: every curve point lies in the order-r group.
  return G1Point::FromAffine(x, y);
}

inline G2Point DecodeG2(ByteView in) {
  PETITION_ENFORCE(in.size() == kG2Size, ErrorCode::kMalformed, "G2 point must be 129 bytes");
  if (detail::AllZero(in)) return G2Point::Identity();
  PETITION_ENFORCE(in[0] == 0x04, ErrorCode::kMalformed, "bad G2 prefix");
  Fp2 x{detail::TakeFp(in.subspan(1, 32)), detail::TakeFp(in.subspan(33, 32))};
  Fp2 y{detail::TakeFp(in.subspan(65, 32)), detail::TakeFp(in.subspan(97, 32))};
  PETITION_ENFORCE(G2Point::IsOnCurve(x, y), ErrorCode::kMalformed, "G2 point not on curve");
  G2Point p = G2Point::FromAffine(x, y);
  PETITION_ENFORCE(p.IsInPrimeSubgroup(), ErrorCode::kMalformed, "G2 point outside subgroup");
  return p;
}

inline GTElement DecodeGT(ByteView in) {
  PETITION_ENFORCE(in.size() == kGTSize, ErrorCode::kMalformed, "GT element must be 384 bytes");
  std::array<Fp2, 6> c;
  for (int k = 0; k < 6; ++k) {
    c[k] = {detail::TakeFp(in.subspan(64 * k, 32)), detail::TakeFp(in.subspan(64 * k + 32, 32))};
  }
  Fp12 v = Fp12::FromCoefficients(c);
  PETITION_ENFORCE(v.Pow(FrParams::kModulus).IsOne(), ErrorCode::kMalformed,
                   "GT element outside subgroup");
  return GTElement(v);
}

// Sequential decoder over a byte buffer; every read throws kMalformed on
// short input.
class Reader {
 public:
  explicit Reader(ByteView in) : in_(in) {}

  ByteView Take(size_t n) {
    PETITION_ENFORCE(in_.size() - pos_ >= n, ErrorCode::kMalformed, "truncated input");
    ByteView out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  uint16_t ReadU16() {
    ByteView b = Take(2);
    return static_cast<uint16_t>((b[0] << 8) | b[1]);
  }

  uint32_t ReadU32() {
    ByteView b = Take(4);
    return (uint32_t(b[0]) << 24) | (uint32_t(b[1]) << 16) | (uint32_t(b[2]) << 8) | b[3];
  }

  Scalar ReadScalar() { return DecodeScalar(Take(kScalarSize)); }
  G1Point ReadG1() { return DecodeG1(Take(kG1Size)); }
  G2Point ReadG2() { return DecodeG2(Take(kG2Size)); }

  ByteView Rest() { return Take(in_.size() - pos_); }

  bool AtEnd() const { return pos_ == in_.size(); }

  void ExpectEnd() const {
    PETITION_ENFORCE(AtEnd(), ErrorCode::kMalformed, "trailing bytes");
  }

 private:
  ByteView in_;
  size_t pos_ = 0;
};

}  // namespace petition::groups
