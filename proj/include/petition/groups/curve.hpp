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
#include <utility>

#include "petition/groups/field.hpp"
#include "petition/groups/tower.hpp"

namespace petition::groups {

// Short Weierstrass point y^2 = x^3 + b in Jacobian coordinates
// (x, y, z) ~ (x/z^2, y/z^3). z == 0 is the identity.
template <class Curve>
class JacobianPoint {
 public:
  using Field = typename Curve::Field;

  JacobianPoint() : x_(Field::One()), y_(Field::One()), z_() {}

  static JacobianPoint Identity() { return JacobianPoint(); }

  // Caller guarantees the point is on the curve.
  static JacobianPoint FromAffine(const Field& x, const Field& y) {
    JacobianPoint p;
    p.x_ = x;
    p.y_ = y;
    p.z_ = Field::One();
    return p;
  }

  static bool IsOnCurve(const Field& x, const Field& y) {
    return y * y == x * x * x + Curve::B();
  }

  static const JacobianPoint& Generator() {
    static const JacobianPoint g = FromAffine(Curve::GeneratorX(), Curve::GeneratorY());
    return g;
  }

  bool IsIdentity() const { return z_.IsZero(); }

  // Requires !IsIdentity().
  std::pair<Field, Field> ToAffine() const {
    Field zinv = z_.Inverse();
    Field zinv2 = zinv * zinv;
    return {x_ * zinv2, y_ * zinv2 * zinv};
  }

  JacobianPoint Double() const {
    if (IsIdentity()) return *this;
    Field a = x_ * x_;
    Field b = y_ * y_;
    Field c = b * b;
    Field d = ((x_ + b) * (x_ + b) - a - c);
    d = d + d;
    Field e = a + a + a;
    Field f = e * e;
    JacobianPoint out;
    out.x_ = f - d - d;
    Field c8 = c + c;
    c8 = c8 + c8;
    c8 = c8 + c8;
    out.y_ = e * (d - out.x_) - c8;
    Field yz = y_ * z_;
    out.z_ = yz + yz;
    return out;
  }

  JacobianPoint operator+(const JacobianPoint& o) const {
    if (IsIdentity()) return o;
    if (o.IsIdentity()) return *this;
    Field z1z1 = z_ * z_;
    Field z2z2 = o.z_ * o.z_;
    Field u1 = x_ * z2z2;
    Field u2 = o.x_ * z1z1;
    Field s1 = y_ * o.z_ * z2z2;
    Field s2 = o.y_ * z_ * z1z1;
    Field h = u2 - u1;
    Field r = s2 - s1;
    if (h.IsZero()) {
      if (r.IsZero()) return Double();
      return Identity();
    }
    r = r + r;
    Field i = h + h;
    i = i * i;
    Field j = h * i;
    Field v = u1 * i;
    JacobianPoint out;
    out.x_ = r * r - j - v - v;
    Field s1j = s1 * j;
    out.y_ = r * (v - out.x_) - s1j - s1j;
    out.z_ = ((z_ + o.z_) * (z_ + o.z_) - z1z1 - z2z2) * h;
    return out;
  }

  JacobianPoint operator-() const {
    JacobianPoint out = *this;
    out.y_ = -y_;
    return out;
  }

  JacobianPoint operator-(const JacobianPoint& o) const { return *this + (-o); }
  JacobianPoint& operator+=(const JacobianPoint& o) { return *this = *this + o; }
  JacobianPoint& operator-=(const JacobianPoint& o) { return *this = *this - o; }

  // Fixed 4-bit window; not constant time.
  JacobianPoint MulU256(const U256& k) const {
    std::array<JacobianPoint, 16> table;
    table[0] = Identity();
    for (int i = 1; i < 16; ++i) table[i] = table[i - 1] + *this;
    JacobianPoint acc;
    int top = (k.BitLength() + 3) / 4;
    for (int w = top - 1; w >= 0; --w) {
      acc = acc.Double().Double().Double().Double();
      int nib = static_cast<int>((k.limb[w / 16] >> (4 * (w % 16))) & 0xf);
      if (nib) acc += table[nib];
    }
    return acc;
  }

  JacobianPoint operator*(const Scalar& k) const { return MulU256(k.ToCanonical()); }

  bool operator==(const JacobianPoint& o) const {
    if (IsIdentity() || o.IsIdentity()) return IsIdentity() && o.IsIdentity();
    Field z1z1 = z_ * z_;
    Field z2z2 = o.z_ * o.z_;
    if (!(x_ * z2z2 == o.x_ * z1z1)) return false;
    return y_ * o.z_ * z2z2 == o.y_ * z_ * z1z1;
  }

  // Order check against the group order r.
  bool IsInPrimeSubgroup() const {
    return MulU256(FrParams::kModulus).IsIdentity();
  }

 private:
  Field x_, y_, z_;
};

template <class Curve>
JacobianPoint<Curve> operator*(const Scalar& k, const JacobianPoint<Curve>& p) {
  return p * k;
}

// E: y^2 = x^3 + 2 over Fp. The full group of rational points has prime
// order r (cofactor 1).
struct G1Curve {
  using Field = Fp;
  static Fp B() { return Fp::FromU64(2); }
  static Fp GeneratorX() { return -Fp::One(); }
  static Fp GeneratorY() { return Fp::One(); }
};

// D-type sextic twist E': y^2 = x^3 + 2/xi = x^3 + (1 - i) over Fp2.
struct G2Curve {
  using Field = Fp2;
  static Fp2 B() { return {Fp::One(), -Fp::One()}; }
  static Fp2 GeneratorX() {
    return {Fp::FromCanonical(U256::FromHex(
                "061a10bb519eb62feb8d8c7e8c61edb6a4648bbb4898bf0d91ee4224c803fb2b")),
            Fp::FromCanonical(U256::FromHex(
                "0516aaf9ba737833310aa78c5982aa5b1f4d746bae3784b70d8c34c1e7d54cf3"))};
  }
  static Fp2 GeneratorY() {
    return {Fp::FromCanonical(U256::FromHex(
                "021897a06baf93439a90e096698c822329bd0ae6bdbe09bd19f0e07891cd2b9a")),
            Fp::FromCanonical(U256::FromHex(
                "0ebb2b0e7c8b15268f6d4456f5f38d37b09006ffd739c9578a2d1aec6b3ace9b"))};
  }
};

using G1Point = JacobianPoint<G1Curve>;
using G2Point = JacobianPoint<G2Curve>;

}  // namespace petition::groups
