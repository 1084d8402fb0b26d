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

#include <openssl/rand.h>

#include <array>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <span>
#include <string>

#include "petition/common/bytes.hpp"
#include "petition/common/error.hpp"
#include "petition/groups/field.hpp"

namespace petition::groups {

// Deterministic byte stream: SHA-256(seed || counter) blocks. Seeded from
// the OS in production and from a fixed value in tests. Not thread safe;
// each caller owns its instance.
class Rng {
 public:
  static Rng FromSeed(uint64_t seed) {
    std::array<uint8_t, 32> bytes{};
    for (int i = 0; i < 8; ++i) bytes[24 + i] = static_cast<uint8_t>(seed >> (56 - 8 * i));
    return Rng(bytes);
  }

  static Rng FromOsEntropy() {
    std::array<uint8_t, 32> bytes{};
    if (RAND_bytes(bytes.data(), static_cast<int>(bytes.size())) != 1) {
      throw Error(ErrorCode::kIo, "OS entropy unavailable");
    }
    return Rng(bytes);
  }

  // PETITION_TEST_SEED forces a deterministic stream; `salt` keeps
  // separately constructed generators in one process from colliding.
  static Rng FromEnvironment(uint64_t salt = 0) {
    if (const char* seed = std::getenv("PETITION_TEST_SEED"); seed && *seed) {
      return FromSeed(std::strtoull(seed, nullptr, 10) * 0x9e3779b97f4a7c15ULL + salt);
    }
    return FromOsEntropy();
  }

  void Fill(std::span<uint8_t> out) {
    for (uint8_t& b : out) {
      if (pos_ == block_.size()) Refill();
      b = block_[pos_++];
    }
  }

  uint64_t NextU64() {
    std::array<uint8_t, 8> b{};
    Fill(b);
    uint64_t v = 0;
    for (uint8_t x : b) v = (v << 8) | x;
    return v;
  }

  // Uniform in [0, bound).
  uint64_t Uniform(uint64_t bound) {
    uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound);
    for (;;) {
      uint64_t v = NextU64();
      if (v < limit) return v % bound;
    }
  }

 private:
  explicit Rng(const std::array<uint8_t, 32>& seed) : seed_(seed) {}

  void Refill() {
    Sha256 h;
    h.Update(ByteView(seed_));
    std::array<uint8_t, 8> ctr{};
    for (int i = 0; i < 8; ++i) ctr[i] = static_cast<uint8_t>(counter_ >> (56 - 8 * i));
    h.Update(ByteView(ctr));
    block_ = h.Final();
    ++counter_;
    pos_ = 0;
  }

  std::array<uint8_t, 32> seed_;
  Sha256::Digest block_{};
  size_t pos_ = block_.size();
  uint64_t counter_ = 0;
};

// Uniform in [1, r-1] by rejection sampling on 254-bit candidates.
inline Scalar RandomScalar(Rng& rng) {
  for (;;) {
    std::array<uint8_t, 32> bytes{};
    rng.Fill(bytes);
    bytes[0] &= 0x3f;
    auto s = Scalar::FromBytes(bytes);
    if (s && !s->IsZero()) return *s;
  }
}

}  // namespace petition::groups
