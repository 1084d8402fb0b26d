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

#include <stdexcept>
#include <string>
#include <string_view>

namespace petition {

// Machine-readable failure classes. The string form is what crosses the wire.
enum class ErrorCode {
  kInvalidArgument,
  kMalformed,
  kBadSignature,
  kBadProof,
  kBadCredentialProof,
  kBadVoteProof,
  kDoubleVote,
  kUnknownPetition,
  kPetitionClosed,
  kPetitionExists,
  kAlreadyProcessed,
  kOutOfRange,
  kRejectedKey,
  kAuthorityUnavailable,
  kTallyCorrupt,
  kForbidden,
  kIo,
};

constexpr std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kMalformed: return "malformed";
    case ErrorCode::kBadSignature: return "bad_signature";
    case ErrorCode::kBadProof: return "bad_proof";
    case ErrorCode::kBadCredentialProof: return "bad_credential_proof";
    case ErrorCode::kBadVoteProof: return "bad_vote_proof";
    case ErrorCode::kDoubleVote: return "double_vote";
    case ErrorCode::kUnknownPetition: return "unknown_petition";
    case ErrorCode::kPetitionClosed: return "petition_closed";
    case ErrorCode::kPetitionExists: return "petition_exists";
    case ErrorCode::kAlreadyProcessed: return "already_processed";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kRejectedKey: return "rejected_key";
    case ErrorCode::kAuthorityUnavailable: return "authority_unavailable";
    case ErrorCode::kTallyCorrupt: return "tally_corrupt";
    case ErrorCode::kForbidden: return "forbidden";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

inline bool ErrorCodeFromName(std::string_view name, ErrorCode* out) {
  for (int i = 0; i <= static_cast<int>(ErrorCode::kIo); ++i) {
    auto code = static_cast<ErrorCode>(i);
    if (ErrorCodeName(code) == name) {
      *out = code;
      return true;
    }
  }
  return false;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  std::string_view code_name() const { return ErrorCodeName(code_); }

 private:
  ErrorCode code_;
};

#define PETITION_ENFORCE(cond, code, msg)          \
  do {                                             \
    if (!(cond)) throw ::petition::Error(code, msg); \
  } while (0)

}  // namespace petition
