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

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "petition/common/error.hpp"

namespace petition {

namespace detail {

[[noreturn]] inline void ThrowIo(std::string_view what, const std::filesystem::path& path) {
  throw Error(ErrorCode::kIo,
              std::string(what) + " " + path.string() + ": " + std::strerror(errno));
}

}  // namespace detail

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void WriteAll(int fd, std::string_view data, const std::filesystem::path& path) {
  while (!data.empty()) {
    ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      detail::ThrowIo("write", path);
    }
    data.remove_prefix(static_cast<size_t>(n));
  }
}

inline void SyncDirectory(const std::filesystem::path& dir) {
  int fd = ::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) detail::ThrowIo("open", dir);
  ::fsync(fd);
  ::close(fd);
}

// Writes to a sibling temporary file, syncs it and renames it over `path`,
// so readers see either the old or the new contents.
inline void AtomicWriteFile(const std::filesystem::path& path, std::string_view data,
                            std::filesystem::perms perms = std::filesystem::perms::owner_read |
                                                           std::filesystem::perms::owner_write) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC,
                  static_cast<mode_t>(perms));
  if (fd < 0) detail::ThrowIo("open", tmp);
  try {
    WriteAll(fd, data, tmp);
    if (::fsync(fd) != 0) detail::ThrowIo("fsync", tmp);
  } catch (...) {
    ::close(fd);
    std::filesystem::remove(tmp);
    throw;
  }
  ::close(fd);
  if (::rename(tmp.c_str(), path.c_str()) != 0) detail::ThrowIo("rename", path);
  SyncDirectory(path.parent_path());
}

}  // namespace petition
