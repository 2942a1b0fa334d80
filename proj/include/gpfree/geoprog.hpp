#pragma once

// g_k^(s)(n): the largest subset of {1, ..., n} containing no k-term
// geometric progression whose ratio is s^d for some d >= 1.
//
// {1..n} splits into chains T(b) = {b, bs, bs^2, ...} (b not divisible by s),
// and a progression with ratio s^d lives inside one chain with exponents in
// arithmetic progression. So g is a sum of r_k over chain lengths.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gpfree/apfree.hpp"

namespace gpfree {

using Natural = std::uint64_t;

inline constexpr std::uint32_t kDefaultGOracleCap = 24;
// g_formula iterates roots one by one up to this n in GMethod::automatic.
inline constexpr Natural kDirectIterationLimit = 100'000;
// Largest n for which g_witness materializes a subset.
inline constexpr Natural kMaxWitnessN = 10'000'000;

// Largest i >= 0 with b * s^i <= n. Integer arithmetic only.
std::uint32_t ilog(Natural s, Natural n, Natural b);

// Chain length needed for the root b = 1, i.e. the deepest r_k row used.
std::uint32_t required_ell_max(Natural s, Natural n);

struct ChainPartition {
  Natural n = 0;
  Natural s = 0;
  std::vector<Natural> roots;                // increasing
  std::vector<std::uint32_t> chain_lengths;  // parallel to roots

  Natural total() const;
};

ChainPartition chain_partition(Natural n, Natural s);

struct ChainContribution {
  Natural root = 0;
  std::uint32_t length = 0;
  std::uint32_t r = 0;
};

struct LengthGroup {
  std::uint32_t length = 0;
  Natural roots = 0;
  std::uint32_t r = 0;
};

struct GResult {
  unsigned k = 0;
  Natural s = 0;
  Natural n = 0;
  Natural value = 0;
  std::vector<LengthGroup> per_length;  // only lengths with at least one root
  std::optional<std::vector<ChainContribution>> per_chain;
  std::optional<std::vector<Natural>> witness;
};

enum class GMethod {
  automatic,  // direct up to kDirectIterationLimit, grouped above
  direct,     // visit every root b <= n
  grouped,    // count roots per chain length by interval counting
};

GResult g_formula(unsigned k, Natural s, Natural n, const RkTable& table,
                  GMethod method = GMethod::automatic);

bool has_k_term_gp(std::span<const Natural> set, unsigned k, Natural s);

// Exhaustive search over subsets of {1..n}; knows nothing about chains.
Natural g_bruteforce(unsigned k, Natural s, std::uint32_t n, std::uint32_t cap = kDefaultGOracleCap);

Natural g_multi_ratio_bruteforce(unsigned k, std::span<const Natural> ratios, std::uint32_t n,
                                 std::uint32_t cap = kDefaultGOracleCap);

// Extremal subset built chain by chain from the table's exponent witnesses.
std::vector<Natural> g_witness(unsigned k, Natural s, Natural n, const RkTable& table);

enum class Comparison { less, equal, greater };

struct MonotonicityRow {
  Natural n = 0;
  Natural g_s = 0;
  Natural g_s2 = 0;
  Comparison cmp = Comparison::equal;  // g_s2 versus g_s
};

struct MonotonicityReport {
  unsigned k = 0;
  Natural s = 0;
  Natural s2 = 0;
  std::vector<MonotonicityRow> rows;
  std::optional<Natural> first_violation;  // first n with g_s2 > g_s
  std::optional<Natural> first_strict;     // first n with g_s2 < g_s
};

// Compares g_k^(s2)(n) against g_k^(s)(n) for n = 1..n_max.
MonotonicityReport monotonicity_experiment(unsigned k, Natural s, Natural s2, Natural n_max,
                                           const RkTable& table_s, const RkTable& table_s2);

}  // namespace gpfree
