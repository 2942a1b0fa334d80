#pragma once

// Exact values of r_k(ell): the largest subset of {0, ..., ell-1} with no
// k-term arithmetic progression (common difference d >= 1).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gpfree/error.hpp"

namespace gpfree {

using Element = std::uint32_t;

// Ground sets are held in fixed-width bitsets.
inline constexpr std::uint32_t kMaxEll = 256;
inline constexpr std::uint32_t kDefaultRkOracleCap = 25;
inline constexpr std::uint64_t kDefaultNodeBudget = 20'000'000'000ULL;

struct SearchBudget {
  std::uint64_t max_nodes = kDefaultNodeBudget;
};

/// r_k(1..ell_max) with a lexicographically least extremal witness for every
/// ell. Immutable; the constructor rejects anything violating the table
/// invariants (unit steps, boundary values, AP-free witnesses of full size).
class RkTable {
 public:
  RkTable(unsigned k, std::vector<std::uint32_t> values, std::vector<std::vector<Element>> witnesses);

  unsigned k() const noexcept { return k_; }
  std::uint32_t ell_max() const noexcept { return static_cast<std::uint32_t>(values_.size()); }
  bool covers(std::uint32_t ell) const noexcept { return ell >= 1 && ell <= ell_max(); }

  // 1-based, like the function it tabulates.
  std::uint32_t value(std::uint32_t ell) const;
  std::span<const Element> witness(std::uint32_t ell) const;

  std::span<const std::uint32_t> values() const noexcept { return values_; }

  // Leading rows 1..ell_max of this table.
  RkTable prefix(std::uint32_t ell_max) const;

  friend bool operator==(const RkTable&, const RkTable&) = default;

 private:
  unsigned k_;
  std::vector<std::uint32_t> values_;
  std::vector<std::vector<Element>> witnesses_;
};

// Search ran past SearchBudget::max_nodes. Carries everything that was proven
// before the budget ran out.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(std::uint32_t ell, std::uint32_t lower_bound, std::optional<RkTable> verified);

  // The ground-set size whose value could not be settled.
  std::uint32_t ell() const noexcept { return ell_; }
  // r_k(ell) >= lower_bound is certified (and r_k(ell) <= lower_bound + 1).
  std::uint32_t lower_bound() const noexcept { return lower_bound_; }
  const std::optional<RkTable>& verified_prefix() const noexcept { return verified_; }

 private:
  std::uint32_t ell_;
  std::uint32_t lower_bound_;
  std::optional<RkTable> verified_;
};

struct RkResult {
  std::uint32_t value = 0;
  std::vector<Element> witness;
};

/// Least ell with r_k(ell) = m, for every m the table has fully reached.
struct GapSequence {
  unsigned k = 0;
  std::uint32_t source_ell_max = 0;  // depth of the table u was read from
  std::vector<std::uint32_t> u;      // u[0] holds u_1

  bool degenerate() const noexcept { return k == 2; }
  std::vector<std::uint32_t> gaps() const;
};

// True iff some {a, a+d, ..., a+(k-1)d} with d >= 1 lies in the set.
// Throws InvalidArgument for k < 2.
bool has_k_term_ap(std::span<const Element> set, unsigned k);

RkResult rk_exact(unsigned k, std::uint32_t ell, SearchBudget budget = {});

// Exhaustive enumeration of all 2^ell subsets; shares nothing with the
// branch-and-bound solver. Refuses ell > cap.
std::uint32_t rk_bruteforce_oracle(unsigned k, std::uint32_t ell,
                                   std::uint32_t cap = kDefaultRkOracleCap);

RkTable rk_table(unsigned k, std::uint32_t ell_max, SearchBudget budget = {});

// Continues an existing table to ell_max, reusing its rows. A base that
// already reaches ell_max is returned unchanged.
RkTable extend_table(const RkTable& base, std::uint32_t ell_max, SearchBudget budget = {});

GapSequence min_inverse(const RkTable& table);

}  // namespace gpfree
