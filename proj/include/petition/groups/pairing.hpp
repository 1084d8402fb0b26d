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

#include <span>
#include <utility>

#include "petition/groups/curve.hpp"
#include "petition/groups/tower.hpp"

namespace petition::groups {

// Element of the order-r subgroup of Fp12^*, written multiplicatively.
class GTElement {
 public:
  GTElement() : v_(Fp12::One()) {}
  explicit GTElement(const Fp12& v) : v_(v) {}

  static GTElement Identity() { return GTElement(); }

  bool IsIdentity() const { return v_.IsOne(); }
  bool operator==(const GTElement&) const = default;

  GTElement operator*(const GTElement& o) const { return GTElement(v_ * o.v_); }
  GTElement Inverse() const { return GTElement(v_.Conjugate()); }
  GTElement Pow(const Scalar& e) const { return GTElement(v_.Pow(e.ToCanonical())); }

  const Fp12& value() const { return v_; }

 private:
  Fp12 v_;
};

namespace detail {

// |6u + 2| for u = -(2^62 + 2^55 + 1).
inline constexpr U256 kAteLoopCount = U256::FromHex("18300000000000004");

// Base-p digits of the hard part (p^4 - p^2 + 1) / r of the final exponent.
inline constexpr U256 kHardDigit0 =
    U256::FromHex("9366c48000000004f393800000000010a100000000000016");
inline constexpr U256 kHardDigit1 =
    U256::FromHex("9366c48000000005b6968000000000152a0000000000001f");
inline constexpr U256 kHardDigit2 = U256::FromHex("61818000000000030600000000000007");

struct TwistAffine {
  Fp2 x, y;
};

// Frobenius endomorphism carried through the untwisting map
// (x, y) -> (x w^2, y w^3).
inline TwistAffine TwistFrobenius(const TwistAffine& q) {
  const auto& gammas = FrobeniusGammas();
  return {q.x.Conjugate() * gammas[2], q.y.Conjugate() * gammas[3]};
}

// Line through the untwisted images of t (with twist slope `slope`)
// evaluated at p = (px, py). Vertical lines are dropped: they vanish under
// the final exponentiation.
inline Fp12 LineValue(const TwistAffine& t, const Fp2& slope, const Fp& px, const Fp& py) {
  Fp12 line;
  line.c0.c0 = Fp2{py, Fp::Zero()};
  line.c1.c0 = -(slope * px);
  line.c1.c1 = slope * t.x - t.y;
  return line;
}

inline Fp12 DoubleStep(TwistAffine& t, const Fp& px, const Fp& py) {
  Fp2 xx = t.x.Square();
  Fp2 slope = (xx + xx + xx) * t.y.Double().Inverse();
  Fp12 line = LineValue(t, slope, px, py);
  Fp2 x3 = slope.Square() - t.x.Double();
  Fp2 y3 = slope * (t.x - x3) - t.y;
  t = {x3, y3};
  return line;
}

inline Fp12 AddStep(TwistAffine& t, const TwistAffine& q, const Fp& px, const Fp& py) {
  Fp2 slope = (q.y - t.y) * (q.x - t.x).Inverse();
  Fp12 line = LineValue(t, slope, px, py);
  Fp2 x3 = slope.Square() - t.x - q.x;
  Fp2 y3 = slope * (t.x - x3) - t.y;
  t = {x3, y3};
  return line;
}

// Optimal ate Miller loop f_{6u+2,Q}(P) with the two Frobenius corrections.
inline Fp12 MillerLoop(const G1Point& p, const G2Point& q) {
  if (p.IsIdentity() || q.IsIdentity()) return Fp12::One();
  auto [px, py] = p.ToAffine();
  auto [qx, qy] = q.ToAffine();
  TwistAffine base{qx, qy};
  TwistAffine t = base;
  Fp12 f = Fp12::One();
  for (int i = kAteLoopCount.BitLength() - 2; i >= 0; --i) {
    f = f.Square() * DoubleStep(t, px, py);
    if (kAteLoopCount.Bit(i)) f *= AddStep(t, base, px, py);
  }
  // u < 0: f_{-a} = 1/f_a up to verticals, and conjugation inverts after
  // the easy part of the final exponentiation.
  f = f.Conjugate();
  t.y = -t.y;
  TwistAffine q1 = TwistFrobenius(base);
  TwistAffine q2 = TwistFrobenius(q1);
  q2.y = -q2.y;
  f *= AddStep(t, q1, px, py);
  f *= AddStep(t, q2, px, py);
  return f;
}

inline Fp12 FinalExponentiation(const Fp12& f) {
  // Easy part: f^((p^6 - 1)(p^2 + 1)).
  Fp12 g = f.Conjugate() * f.Inverse();
  g = g.Frobenius().Frobenius() * g;
  // Hard part as a 4-way multi-exponentiation over Frobenius powers.
  Fp12 g1 = g.Frobenius();
  Fp12 g2 = g1.Frobenius();
  Fp12 g3 = g2.Frobenius();
  Fp12 acc = Fp12::One();
  int top = kHardDigit0.BitLength();
  for (int i = top - 1; i >= 0; --i) {
    acc = acc.Square();
    if (kHardDigit0.Bit(i)) acc *= g;
    if (kHardDigit1.Bit(i)) acc *= g1;
    if (kHardDigit2.Bit(i)) acc *= g2;
  }
  return acc * g3;
}

}  // namespace detail

inline GTElement Pairing(const G1Point& a, const G2Point& b) {
  return GTElement(detail::FinalExponentiation(detail::MillerLoop(a, b)));
}

// prod e(a_i, b_i) with a single final exponentiation.
inline GTElement MultiPairing(std::span<const std::pair<G1Point, G2Point>> terms) {
  Fp12 f = Fp12::One();
  for (const auto& [a, b] : terms) f *= detail::MillerLoop(a, b);
  return GTElement(detail::FinalExponentiation(f));
}

}  // namespace petition::groups
