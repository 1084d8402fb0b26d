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

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "petition/coconut/show.hpp"
#include "petition/common/bytes.hpp"
#include "petition/common/file.hpp"
#include "petition/nodes/wire.hpp"
#include "petition/tally/elgamal.hpp"

namespace petition::nodes {

enum class PetitionState { kOpen, kClosed, kDecrypting, kFinished };

constexpr std::string_view PetitionStateName(PetitionState s) {
  switch (s) {
    case PetitionState::kOpen: return "open";
    case PetitionState::kClosed: return "closed";
    case PetitionState::kDecrypting: return "decrypting";
    case PetitionState::kFinished: return "finished";
  }
  return "unknown";
}

inline PetitionState PetitionStateFromName(std::string_view name) {
  for (auto s : {PetitionState::kOpen, PetitionState::kClosed, PetitionState::kDecrypting,
                 PetitionState::kFinished}) {
    if (PetitionStateName(s) == name) return s;
  }
  throw Error(ErrorCode::kMalformed, "unknown petition state '" + std::string(name) + "'");
}

struct PetitionRecord {
  std::string petition_id;
  PetitionState state = PetitionState::kOpen;
  tally::EncryptedTotal total;
  std::set<Bytes> spent_zetas;
  std::optional<tally::TallyResult> result;
  int64_t close_time = 0;  // unix seconds, 0 while open
  // Decryption chain progress: the next authority to visit and the
  // partially decrypted total so far.
  uint32_t next_stage = 0;
  tally::EncryptedTotal partial;
  bool corrupt = false;
};

inline json TotalToJson(const tally::EncryptedTotal& t) {
  return {{"yes", EncodeCiphertext(t.yes)}, {"no", EncodeCiphertext(t.no)}, {"count", t.count}};
}

inline tally::EncryptedTotal TotalFromJson(const json& j) {
  tally::EncryptedTotal t;
  t.yes = CiphertextFromJson(j, "yes");
  t.no = CiphertextFromJson(j, "no");
  t.count = wire::Unsigned(j, "count");
  return t;
}

inline json SnapshotJson(const PetitionRecord& r) {
  json zetas = json::array();
  for (const Bytes& z : r.spent_zetas) zetas.push_back(Base64Encode(z));
  json out = {
      {"petitionID", r.petition_id},
      {"state", PetitionStateName(r.state)},
      {"close_time", r.close_time},
      {"total", TotalToJson(r.total)},
      {"spent_zetas", zetas},
      {"next_stage", r.next_stage},
      {"partial", TotalToJson(r.partial)},
      {"corrupt", r.corrupt},
  };
  out["result"] = r.result ? json{{"yes", r.result->yes_count}, {"no", r.result->no_count}}
                           : json(nullptr);
  return out;
}

inline PetitionRecord SnapshotFromJson(const json& j) {
  PetitionRecord r;
  r.petition_id = wire::PetitionId(j);
  r.state = PetitionStateFromName(wire::String(j, "state"));
  r.close_time = wire::Field(j, "close_time").get<int64_t>();
  r.total = TotalFromJson(wire::Field(j, "total"));
  for (const json& z : wire::Field(j, "spent_zetas")) {
    r.spent_zetas.insert(Base64Decode(z.get<std::string>()));
  }
  r.next_stage = static_cast<uint32_t>(wire::Unsigned(j, "next_stage"));
  r.partial = TotalFromJson(wire::Field(j, "partial"));
  r.corrupt = wire::Field(j, "corrupt").get<bool>();
  const json& res = wire::Field(j, "result");
  if (!res.is_null()) r.result = tally::TallyResult{wire::Unsigned(res, "yes"),
                                                    wire::Unsigned(res, "no")};
  return r;
}

// On-disk state of one petition: snapshot.json, rewritten atomically, and
// journal.log, one JSON line per accepted vote appended and fsynced before
// the vote is acknowledged. The snapshot covers the first total.count
// journal lines; the rest are replayed on load.
class PetitionStore {
 public:
  static constexpr const char* kSnapshotName = "snapshot.json";
  static constexpr const char* kJournalName = "journal.log";

  explicit PetitionStore(std::filesystem::path dir) : dir_(std::move(dir)) {}
  PetitionStore(const PetitionStore&) = delete;
  PetitionStore& operator=(const PetitionStore&) = delete;
  ~PetitionStore() {
    if (journal_fd_ >= 0) ::close(journal_fd_);
  }

  // Directory name for a petition: hex keeps arbitrary ids filesystem-safe.
  static std::string DirectoryName(std::string_view petition_id) {
    return ToHex(AsBytes(petition_id));
  }

  const std::filesystem::path& dir() const { return dir_; }

  void Create(const PetitionRecord& record) {
    std::filesystem::create_directories(dir_);
    OpenJournal();
    WriteSnapshot(record);
  }

  void WriteSnapshot(const PetitionRecord& record) {
    AtomicWriteFile(dir_ / kSnapshotName, SnapshotJson(record).dump());
  }

  void AppendVote(const Bytes& zeta, const Bytes& votes) {
    std::string line = json{{"zeta", Base64Encode(zeta)}, {"votes", Base64Encode(votes)}}.dump();
    line.push_back('\n');
    WriteAll(journal_fd_, line, dir_ / kJournalName);
    if (::fdatasync(journal_fd_) != 0) detail::ThrowIo("fsync", dir_ / kJournalName);
  }

  // Loads the snapshot and folds in journal lines it does not cover. A torn
  // final line, left by a crash in the middle of an append, is cut off.
  PetitionRecord Load(const groups::G1Point& vote_base) {
    PetitionRecord r = SnapshotFromJson(wire::Parse(ReadFile(dir_ / kSnapshotName)));
    std::filesystem::path journal = dir_ / kJournalName;
    std::string data = std::filesystem::exists(journal) ? ReadFile(journal) : std::string();
    size_t complete = data.rfind('\n');
    complete = complete == std::string::npos ? 0 : complete + 1;
    if (complete != data.size()) std::filesystem::resize_file(journal, complete);

    uint64_t line_no = 0;
    size_t pos = 0;
    while (pos < complete) {
      size_t end = data.find('\n', pos);
      std::string_view line(data.data() + pos, end - pos);
      pos = end + 1;
      if (line_no++ < r.total.count) continue;
      PETITION_ENFORCE(r.state == PetitionState::kOpen, ErrorCode::kIo,
                       "journal holds votes past the close of " + dir_.string());
      try {
        json entry = wire::Parse(line);
        Bytes zeta = wire::Binary(entry, "zeta");
        auto [vote, inverse] =
            tally::EncryptedVote::DeserializeCiphertexts(wire::Binary(entry, "votes"));
        PETITION_ENFORCE(r.spent_zetas.insert(zeta).second, ErrorCode::kIo, "repeated zeta");
        r.total.Add(vote, inverse, vote_base);
      } catch (const Error& e) {
        throw Error(ErrorCode::kIo, "corrupt journal line " + std::to_string(line_no) + " in " +
                                        journal.string() + ": " + e.what());
      }
    }
    PETITION_ENFORCE(line_no >= r.total.count, ErrorCode::kIo,
                     "journal of " + dir_.string() + " is shorter than its snapshot");
    OpenJournal();
    return r;
  }

 private:
  void OpenJournal() {
    std::filesystem::path journal = dir_ / kJournalName;
    journal_fd_ = ::open(journal.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0600);
    if (journal_fd_ < 0) detail::ThrowIo("open", journal);
  }

  std::filesystem::path dir_;
  int journal_fd_ = -1;
};

}  // namespace petition::nodes
