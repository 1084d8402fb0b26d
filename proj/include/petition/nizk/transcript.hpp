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
#include <vector>

#include "petition/common/bytes.hpp"
#include "petition/groups/codec.hpp"
#include "petition/groups/params.hpp"

namespace petition::nizk {

using groups::G1Point;
using groups::G2Point;
using groups::PublicParams;
using groups::Scalar;

// Fiat-Shamir hash: SHA-256 over a length-prefixed domain tag, the params
// digest and then every appended element in canonical encoding. The
// challenge is the digest read big-endian and reduced mod r.
class Transcript {
 public:
  Transcript(std::string_view domain_tag, const PublicParams& params) {
    AppendBytes(AsBytes(domain_tag));
    hash_.Update(ByteView(params.digest));
  }

  Transcript& Append(const G1Point& p) { return Raw(groups::Encode(p)); }
  Transcript& Append(const G2Point& p) { return Raw(groups::Encode(p)); }
  Transcript& Append(const Scalar& s) { return Raw(groups::Encode(s)); }

  Transcript& AppendBytes(ByteView data) {
    Bytes len;
    AppendU32(len, static_cast<uint32_t>(data.size()));
    hash_.Update(len);
    hash_.Update(data);
    return *this;
  }

  Scalar Challenge() {
    auto digest = hash_.Final();
    return Scalar::FromBytesReduced(digest);
  }

 private:
  Transcript& Raw(const Bytes& b) {
    hash_.Update(b);
    return *this;
  }

  Sha256 hash_;
};

// Proof byte layout: the proof's elements in a fixed order, each written as
// be16(length) || canonical encoding.
class ProofWriter {
 public:
  template <class T>
  ProofWriter& Put(const T& v) {
    Bytes enc = groups::Encode(v);
    AppendU16(out_, static_cast<uint16_t>(enc.size()));
    Append(out_, enc);
    return *this;
  }

  Bytes Finish() { return std::move(out_); }

 private:
  Bytes out_;
};

class ProofReader {
 public:
  explicit ProofReader(ByteView in) : reader_(in) {}

  Scalar GetScalar() { return groups::DecodeScalar(Element(groups::kScalarSize)); }
  G1Point GetG1() { return groups::DecodeG1(Element(groups::kG1Size)); }

  void ExpectEnd() const { reader_.ExpectEnd(); }

 private:
  ByteView Element(size_t expected) {
    uint16_t len = reader_.ReadU16();
    PETITION_ENFORCE(len == expected, ErrorCode::kMalformed, "bad proof element length");
    return reader_.Take(len);
  }

  groups::Reader reader_;
};

}  // namespace petition::nizk
