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
#include <string_view>

namespace petition::groups {

using uint128_t = unsigned __int128;

// Fixed-width 256-bit unsigned integer, little-endian 64-bit limbs.
struct U256 {
  std::array<uint64_t, 4> limb{};

  constexpr bool operator==(const U256&) const = default;

  static constexpr U256 FromU64(uint64_t v) { return U256{{v, 0, 0, 0}}; }

  // Accepts "0x"-prefixed or bare hex of at most 64 digits.
  static constexpr U256 FromHex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
      hex.remove_prefix(2);
    }
    U256 out;
    int bit = 0;
    for (size_t i = hex.size(); i-- > 0;) {
      char c = hex[i];
      uint64_t d = (c >= '0' && c <= '9')   ? uint64_t(c - '0')
                   : (c >= 'a' && c <= 'f') ? uint64_t(c - 'a' + 10)
                                            : uint64_t(c - 'A' + 10);
      out.limb[bit / 64] |= d << (bit % 64);
      bit += 4;
    }
    return out;
  }

  static U256 FromBigEndian(std::span<const uint8_t, 32> in) {
    U256 out;
    for (int i = 0; i < 32; ++i) {
      out.limb[3 - i / 8] |= uint64_t(in[i]) << (8 * (7 - i % 8));
    }
    return out;
  }

  void ToBigEndian(std::span<uint8_t, 32> out) const {
    for (int i = 0; i < 32; ++i) {
      out[i] = static_cast<uint8_t>(limb[3 - i / 8] >> (8 * (7 - i % 8)));
    }
  }

  constexpr bool IsZero() const {
    return (limb[0] | limb[1] | limb[2] | limb[3]) == 0;
  }

  constexpr bool Bit(int i) const { return (limb[i / 64] >> (i % 64)) & 1; }

  constexpr int BitLength() const {
    for (int i = 3; i >= 0; --i) {
      if (limb[i] != 0) {
        int n = 64;
        while (!((limb[i] >> (n - 1)) & 1)) --n;
        return 64 * i + n;
      }
    }
    return 0;
  }
};

constexpr int Compare(const U256& a, const U256& b) {
  for (int i = 3; i >= 0; --i) {
    if (a.limb[i] != b.limb[i]) return a.limb[i] < b.limb[i] ? -1 : 1;
  }
  return 0;
}

// out = a + b, returns carry.
constexpr uint64_t AddWithCarry(U256& out, const U256& a, const U256& b) {
  uint64_t carry = 0;
  for (int i = 0; i < 4; ++i) {
    uint128_t s = uint128_t(a.limb[i]) + b.limb[i] + carry;
    out.limb[i] = static_cast<uint64_t>(s);
    carry = static_cast<uint64_t>(s >> 64);
  }
  return carry;
}

// out = a - b, returns borrow.
constexpr uint64_t SubWithBorrow(U256& out, const U256& a, const U256& b) {
  uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    uint128_t d = uint128_t(a.limb[i]) - b.limb[i] - borrow;
    out.limb[i] = static_cast<uint64_t>(d);
    borrow = static_cast<uint64_t>(d >> 64) & 1;
  }
  return borrow;
}

constexpr U256 ShiftRight1(const U256& a) {
  U256 out;
  for (int i = 0; i < 4; ++i) {
    out.limb[i] = a.limb[i] >> 1;
    if (i < 3) out.limb[i] |= a.limb[i + 1] << 63;
  }
  return out;
}

}  // namespace petition::groups
