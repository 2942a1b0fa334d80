#pragma once

// On-disk r_k tables. One text file per k:
//
//   GPFREE-RKTABLE
//   version 1
//   k 3
//   ell_max 4
//   checksum 95b5234a9795347b
//   1 1 0
//   2 2 0,1
//   3 2 0,1
//   4 3 0,1,3
//
// The checksum is 64-bit FNV-1a, printed as 16 lowercase hex digits, over
// every byte of the file except the checksum line itself. Lines end in '\n'.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "gpfree/apfree.hpp"
#include "gpfree/error.hpp"

namespace gpfree::cache {

inline constexpr std::string_view kMagic = "GPFREE-RKTABLE";
inline constexpr int kFormatVersion = 1;
inline constexpr const char* kCacheDirEnv = "GPFREE_CACHE_DIR";

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(Errc::io, what) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::filesystem::path& path)
      : Error(Errc::not_found, "cache file not found: " + path.string()) {}
};

class CorruptCache : public Error {
 public:
  explicit CorruptCache(const std::string& detail)
      : Error(Errc::corrupt_cache, "corrupt-cache: " + detail), detail_(detail) {}
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
};

class VersionMismatch : public Error {
 public:
  VersionMismatch(int found, int expected)
      : Error(Errc::version_mismatch, "version-mismatch: file has format version " + std::to_string(found) +
                                          ", this build reads version " + std::to_string(expected)),
        found_(found), expected_(expected) {}
  int found() const noexcept { return found_; }
  int expected() const noexcept { return expected_; }

 private:
  int found_;
  int expected_;
};

class WouldTruncate : public Error {
 public:
  WouldTruncate(const std::filesystem::path& path, std::uint32_t existing, std::uint32_t incoming)
      : Error(Errc::would_truncate, "would-truncate: " + path.string() + " holds ell_max " +
                                        std::to_string(existing) + ", refusing to replace with " +
                                        std::to_string(incoming)) {}
};

std::uint64_t fnv1a(std::string_view bytes);

std::string serialize(const RkTable& table);
RkTable parse(std::string_view text);

// Atomic replace via a temporary file in the same directory. An existing
// readable table for the same k with a larger ell_max is never overwritten.
void save(const RkTable& table, const std::filesystem::path& path);
RkTable load(const std::filesystem::path& path);

// $GPFREE_CACHE_DIR, else $XDG_CACHE_HOME/gpfree, else $HOME/.cache/gpfree,
// else ./.gpfree-cache.
std::filesystem::path default_dir();
std::filesystem::path table_path(const std::filesystem::path& dir, unsigned k);

// Loads the cached table for k (if any), extends it to ell_max and writes
// back whatever grew. An unreadable cache file is rebuilt from scratch. On
// budget exhaustion the verified prefix is saved before rethrowing.
RkTable ensure_table(const std::filesystem::path& dir, unsigned k, std::uint32_t ell_max,
                     SearchBudget budget = {});

}  // namespace gpfree::cache
