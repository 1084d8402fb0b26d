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

#include "petition/groups/field.hpp"

// Extension tower for Fp254BNb:
//   Fp2  = Fp[i]  / (i^2 + 1)
//   Fp6  = Fp2[v] / (v^3 - xi),  xi = 1 + i
//   Fp12 = Fp6[w] / (w^2 - v)
namespace petition::groups {

struct Fp2 {
  Fp c0, c1;

  static Fp2 Zero() { return {}; }
  static Fp2 One() { return {Fp::One(), Fp::Zero()}; }

  bool IsZero() const { return c0.IsZero() && c1.IsZero(); }
  bool operator==(const Fp2&) const = default;

  Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
  Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
  Fp2 operator-() const { return {-c0, -c1}; }

  Fp2 operator*(const Fp2& o) const {
    Fp aa = c0 * o.c0;
    Fp bb = c1 * o.c1;
    Fp cross = (c0 + c1) * (o.c0 + o.c1);
    return {aa - bb, cross - aa - bb};
  }
  Fp2 operator*(const Fp& s) const { return {c0 * s, c1 * s}; }

  Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  Fp2& operator*=(const Fp2& o) { return *this = *this * o; }

  Fp2 Square() const {
    Fp a = (c0 + c1) * (c0 - c1);
    Fp b = c0 * c1;
    return {a, b + b};
  }
  Fp2 Double() const { return *this + *this; }
  Fp2 Conjugate() const { return {c0, -c1}; }

  Fp2 MulByXi() const { return {c0 - c1, c0 + c1}; }

  Fp2 Inverse() const {
    Fp norm_inv = (c0.Square() + c1.Square()).Inverse();
    return {c0 * norm_inv, -(c1 * norm_inv)};
  }

  Fp2 Pow(const U256& e) const {
    Fp2 acc = One();
    for (int i = e.BitLength() - 1; i >= 0; --i) {
      acc = acc.Square();
      if (e.Bit(i)) acc *= *this;
    }
    return acc;
  }
};

struct Fp6 {
  Fp2 c0, c1, c2;

  static Fp6 Zero() { return {}; }
  static Fp6 One() { return {Fp2::One(), Fp2::Zero(), Fp2::Zero()}; }

  bool IsZero() const { return c0.IsZero() && c1.IsZero() && c2.IsZero(); }
  bool operator==(const Fp6&) const = default;

  Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
  Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
  Fp6 operator-() const { return {-c0, -c1, -c2}; }

  Fp6 operator*(const Fp6& o) const {
    Fp2 t0 = c0 * o.c0;
    Fp2 t1 = c1 * o.c1;
    Fp2 t2 = c2 * o.c2;
    Fp2 r0 = ((c1 + c2) * (o.c1 + o.c2) - t1 - t2).MulByXi() + t0;
    Fp2 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + t2.MulByXi();
    Fp2 r2 = (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1;
    return {r0, r1, r2};
  }
  Fp6 operator*(const Fp2& s) const { return {c0 * s, c1 * s, c2 * s}; }

  Fp6 Square() const { return *this * *this; }

  // Multiplication by v.
  Fp6 MulByV() const { return {c2.MulByXi(), c0, c1}; }

  Fp6 Inverse() const {
    Fp2 t0 = c0.Square() - (c1 * c2).MulByXi();
    Fp2 t1 = c2.Square().MulByXi() - c0 * c1;
    Fp2 t2 = c1.Square() - c0 * c2;
    Fp2 denom = c0 * t0 + (c2 * t1 + c1 * t2).MulByXi();
    Fp2 inv = denom.Inverse();
    return {t0 * inv, t1 * inv, t2 * inv};
  }
};

struct Fp12 {
  Fp6 c0, c1;

  static Fp12 One() { return {Fp6::One(), Fp6::Zero()}; }

  bool IsOne() const { return *this == One(); }
  bool operator==(const Fp12&) const = default;

  Fp12 operator*(const Fp12& o) const {
    Fp6 t0 = c0 * o.c0;
    Fp6 t1 = c1 * o.c1;
    Fp6 cross = (c0 + c1) * (o.c0 + o.c1) - t0 - t1;
    return {t0 + t1.MulByV(), cross};
  }
  Fp12& operator*=(const Fp12& o) { return *this = *this * o; }

  Fp12 Square() const {
    Fp6 ab = c0 * c1;
    Fp6 s = (c0 + c1) * (c0 + c1.MulByV()) - ab - ab.MulByV();
    return {s, ab + ab};
  }

  Fp12 Conjugate() const { return {c0, -c1}; }

  Fp12 Inverse() const {
    Fp6 denom = (c0.Square() - c1.Square().MulByV()).Inverse();
    return {c0 * denom, -(c1 * denom)};
  }

  Fp12 Pow(const U256& e) const {
    Fp12 acc = One();
    for (int i = e.BitLength() - 1; i >= 0; --i) {
      acc = acc.Square();
      if (e.Bit(i)) acc *= *this;
    }
    return acc;
  }

  // x -> x^p.
  Fp12 Frobenius() const;

  // Coefficients over the basis 1, w, ..., w^5.
  std::array<Fp2, 6> Coefficients() const {
    return {c0.c0, c1.c0, c0.c1, c1.c1, c0.c2, c1.c2};
  }
  static Fp12 FromCoefficients(const std::array<Fp2, 6>& c) {
    return {{c[0], c[2], c[4]}, {c[1], c[3], c[5]}};
  }
};

namespace detail {

// xi^(k (p-1)/6) for k = 0..5, so that (w^k)^p = gamma[k] * w^k.
inline const std::array<Fp2, 6>& FrobeniusGammas() {
  static const std::array<Fp2, 6> gammas = [] {
    U256 e = U256::FromHex(
        "063090c06000000049b362400000000165858000000000034680000000000003");
    Fp2 xi{Fp::One(), Fp::One()};
    Fp2 gamma = xi.Pow(e);
    std::array<Fp2, 6> out;
    out[0] = Fp2::One();
    for (int k = 1; k < 6; ++k) out[k] = out[k - 1] * gamma;
    return out;
  }();
  return gammas;
}

}  // namespace detail

inline Fp12 Fp12::Frobenius() const {
  const auto& gammas = detail::FrobeniusGammas();
  auto c = Coefficients();
  for (int k = 0; k < 6; ++k) c[k] = c[k].Conjugate() * gammas[k];
  return FromCoefficients(c);
}

}  // namespace petition::groups
