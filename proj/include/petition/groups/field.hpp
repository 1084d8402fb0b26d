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
#include <optional>
#include <span>

#include "petition/groups/uint256.hpp"

namespace petition::groups {

namespace detail {

constexpr U256 DoubleMod(const U256& x, const U256& m) {
  U256 out;
  uint64_t carry = AddWithCarry(out, x, x);
  if (carry || Compare(out, m) >= 0) SubWithBorrow(out, out, m);
  return out;
}

constexpr U256 PowerOfTwoMod(int exponent, const U256& m) {
  U256 x = U256::FromU64(1);
  for (int i = 0; i < exponent; ++i) x = DoubleMod(x, m);
  return x;
}

constexpr uint64_t NegInverse64(uint64_t m0) {
  uint64_t x = 1;
  for (int i = 0; i < 7; ++i) x *= 2 - m0 * x;
  return ~x + 1;
}

}  // namespace detail

// Prime field element kept in Montgomery form (R = 2^256). `Params` supplies
// kModulus, an odd prime below 2^255.
template <class Params>
class PrimeField {
 public:
  static constexpr U256 kModulus = Params::kModulus;
  static constexpr uint64_t kNegInv = detail::NegInverse64(kModulus.limb[0]);
  static constexpr U256 kR = detail::PowerOfTwoMod(256, kModulus);
  static constexpr U256 kR2 = detail::PowerOfTwoMod(512, kModulus);
  static constexpr size_t kByteSize = 32;

  constexpr PrimeField() = default;

  static PrimeField Zero() { return PrimeField(); }
  static PrimeField One() { return FromMont(kR); }

  static PrimeField FromU64(uint64_t v) {
    return FromCanonical(U256::FromU64(v));
  }

  // Signed convenience for small constants and test vectors.
  static PrimeField FromI64(int64_t v) {
    if (v >= 0) return FromU64(static_cast<uint64_t>(v));
    return -FromU64(static_cast<uint64_t>(-(v + 1)) + 1);
  }

  // `v` must already be < modulus.
  static PrimeField FromCanonical(const U256& v) {
    PrimeField out;
    out.v_ = MontMul(v, kR2);
    return out;
  }

  // Any 256-bit value, reduced mod the modulus.
  static PrimeField FromU256Reduced(U256 v) {
    while (Compare(v, kModulus) >= 0) SubWithBorrow(v, v, kModulus);
    return FromCanonical(v);
  }

  // Rejects non-canonical encodings (value >= modulus).
  static std::optional<PrimeField> FromBytes(std::span<const uint8_t, 32> in) {
    U256 v = U256::FromBigEndian(in);
    if (Compare(v, kModulus) >= 0) return std::nullopt;
    return FromCanonical(v);
  }

  static PrimeField FromBytesReduced(std::span<const uint8_t, 32> in) {
    return FromU256Reduced(U256::FromBigEndian(in));
  }

  U256 ToCanonical() const { return MontMul(v_, U256::FromU64(1)); }

  std::array<uint8_t, 32> ToBytes() const {
    std::array<uint8_t, 32> out{};
    ToCanonical().ToBigEndian(out);
    return out;
  }

  bool IsZero() const { return v_.IsZero(); }
  bool IsOne() const { return v_ == kR; }
  bool IsOdd() const { return ToCanonical().limb[0] & 1; }

  bool operator==(const PrimeField& o) const { return v_ == o.v_; }

  PrimeField operator+(const PrimeField& o) const {
    PrimeField out;
    uint64_t carry = AddWithCarry(out.v_, v_, o.v_);
    if (carry || Compare(out.v_, kModulus) >= 0) {
      SubWithBorrow(out.v_, out.v_, kModulus);
    }
    return out;
  }

  PrimeField operator-(const PrimeField& o) const {
    PrimeField out;
    if (SubWithBorrow(out.v_, v_, o.v_)) AddWithCarry(out.v_, out.v_, kModulus);
    return out;
  }

  PrimeField operator-() const { return PrimeField() - *this; }

  PrimeField operator*(const PrimeField& o) const {
    return FromMont(MontMul(v_, o.v_));
  }

  PrimeField& operator+=(const PrimeField& o) { return *this = *this + o; }
  PrimeField& operator-=(const PrimeField& o) { return *this = *this - o; }
  PrimeField& operator*=(const PrimeField& o) { return *this = *this * o; }

  PrimeField Square() const { return *this * *this; }
  PrimeField Double() const { return *this + *this; }

  PrimeField Pow(const U256& e) const {
    PrimeField acc = One();
    for (int i = e.BitLength() - 1; i >= 0; --i) {
      acc = acc.Square();
      if (e.Bit(i)) acc *= *this;
    }
    return acc;
  }

  // Fermat inversion; zero maps to zero.
  PrimeField Inverse() const {
    U256 e;
    SubWithBorrow(e, kModulus, U256::FromU64(2));
    return Pow(e);
  }

  // Square root for moduli congruent to 3 mod 4.
  std::optional<PrimeField> Sqrt() const {
    static_assert((kModulus.limb[0] & 3) == 3);
    U256 e;
    AddWithCarry(e, kModulus, U256::FromU64(1));
    e = ShiftRight1(ShiftRight1(e));
    PrimeField root = Pow(e);
    if (root.Square() == *this) return root;
    return std::nullopt;
  }

 private:
  static PrimeField FromMont(const U256& v) {
    PrimeField out;
    out.v_ = v;
    return out;
  }

  // CIOS Montgomery multiplication: a * b * R^-1 mod modulus.
  static U256 MontMul(const U256& a, const U256& b) {
    uint64_t t[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      uint64_t carry = 0;
      for (int j = 0; j < 4; ++j) {
        uint128_t s = uint128_t(a.limb[j]) * b.limb[i] + t[j] + carry;
        t[j] = static_cast<uint64_t>(s);
        carry = static_cast<uint64_t>(s >> 64);
      }
      uint128_t s = uint128_t(t[4]) + carry;
      t[4] = static_cast<uint64_t>(s);
      t[5] = static_cast<uint64_t>(s >> 64);

      uint64_t m = t[0] * kNegInv;
      s = uint128_t(m) * kModulus.limb[0] + t[0];
      carry = static_cast<uint64_t>(s >> 64);
      for (int j = 1; j < 4; ++j) {
        s = uint128_t(m) * kModulus.limb[j] + t[j] + carry;
        t[j - 1] = static_cast<uint64_t>(s);
        carry = static_cast<uint64_t>(s >> 64);
      }
      s = uint128_t(t[4]) + carry;
      t[3] = static_cast<uint64_t>(s);
      t[4] = t[5] + static_cast<uint64_t>(s >> 64);
    }
    U256 out{{t[0], t[1], t[2], t[3]}};
    if (t[4] || Compare(out, kModulus) >= 0) SubWithBorrow(out, out, kModulus);
    return out;
  }

  U256 v_{};
};

// Base field of the Fp254BNb curve.
struct FpParams {
  static constexpr U256 kModulus = U256::FromHex(
      "2523648240000001ba344d80000000086121000000000013a700000000000013");
};

// Prime order r of G1, G2 and GT.
struct FrParams {
  static constexpr U256 kModulus = U256::FromHex(
      "2523648240000001ba344d8000000007ff9f800000000010a10000000000000d");
};

using Fp = PrimeField<FpParams>;
using Scalar = PrimeField<FrParams>;

}  // namespace petition::groups
