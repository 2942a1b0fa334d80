#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gpfree {

enum class Errc {
  invalid_argument,
  budget_exhausted,
  table_insufficient,
  overflow,
  oracle_cap,
  io,
  corrupt_cache,
  version_mismatch,
  would_truncate,
  not_found,
};

// Base of every error thrown by the library. The code is what the C API
// reports; subclasses carry the structured payload.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(Errc::invalid_argument, what) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what) : Error(Errc::overflow, what) {}
};

class OracleCapExceeded : public Error {
 public:
  OracleCapExceeded(std::uint64_t size, std::uint64_t cap)
      : Error(Errc::oracle_cap, "oracle refused: size " + std::to_string(size) +
                                    " exceeds cap " + std::to_string(cap)),
        size_(size), cap_(cap) {}
  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t size_;
  std::uint64_t cap_;
};

// The r_k table does not reach the ground-set size an operation needs.
class TableInsufficient : public Error {
 public:
  TableInsufficient(std::uint32_t required, std::uint32_t available)
      : Error(Errc::table_insufficient,
              "table-insufficient: need r_k table to ell_max >= " + std::to_string(required) +
                  ", have " + std::to_string(available)),
        required_(required), available_(available) {}
  TableInsufficient(std::uint32_t required, std::uint32_t available, const std::string& what)
      : Error(Errc::table_insufficient, what), required_(required), available_(available) {}
  std::uint32_t required() const noexcept { return required_; }
  std::uint32_t available() const noexcept { return available_; }

 private:
  std::uint32_t required_;
  std::uint32_t available_;
};

}  // namespace gpfree
