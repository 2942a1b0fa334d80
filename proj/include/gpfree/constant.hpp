#pragma once

// The limit constant theta(k, s) = (s-1) * sum_m s^(-u_m), where u_m is the
// least ell with r_k(ell) = m. Everything here is exact rational arithmetic;
// decimals are produced only for display.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gpfree/apfree.hpp"
#include "gpfree/geoprog.hpp"

namespace gpfree {

using Rational = mpq_class;
using Integer = mpz_class;

Integer to_integer(Natural n);
// Throws OverflowError when the value does not fit.
Natural to_natural(const Integer& z);

// Number of integers n with x < n <= y and s not dividing n.
Integer count_nondivisible(const Rational& x, const Rational& y, Natural s);

// s^(-e) for any integer e.
Rational inverse_power(Natural s, long e);

/// An enclosure partial <= theta <= partial + tail_bound.
struct ThetaApproximation {
  unsigned k = 0;
  Natural s = 0;
  std::uint32_t terms = 0;  // M
  Rational partial;
  Rational tail_bound;
  bool finite = false;  // the series has no terms beyond those summed (k = 2)

  Rational lower() const { return partial; }
  Rational upper() const { return partial + tail_bound; }
  Rational midpoint() const { return partial + tail_bound / 2; }
};

// Sums the first M terms. The tail bound is s^(1 - u_{M+1}) when u_{M+1} is
// in the sequence and s^(-u_M) otherwise. k = 2 yields (s-1)/s exactly.
ThetaApproximation theta_partial(Natural s, const GapSequence& gaps, std::uint32_t terms);
// All terms the sequence holds.
ThetaApproximation theta_partial(Natural s, const GapSequence& gaps);

struct DigitStream {
  unsigned k = 0;
  Natural s = 0;
  std::uint32_t length = 0;
  std::vector<std::uint32_t> digits;  // position ell at index ell-1; each 0 or s-1
  std::vector<std::uint32_t> one_positions;

  // Same positions with the digit 1 (expansion of theta / (s-1)).
  std::vector<std::uint32_t> unscaled() const;
  // sum of digits[ell-1] * s^(-ell).
  Rational value() const;
};

DigitStream theta_digits(Natural s, const GapSequence& gaps, std::uint32_t length);

struct GapRecord {
  std::uint32_t m = 0;    // index of the gap u_{m+1} - u_m
  std::uint32_t gap = 0;
};

struct GapStats {
  std::vector<std::uint32_t> diffs;        // diffs[m-1] = u_{m+1} - u_m
  std::vector<std::uint32_t> running_max;  // parallel to diffs
  std::vector<GapRecord> records;          // where the running max grows, first gap included

  // Times the running maximum strictly increased after the first gap.
  std::size_t increases() const { return records.empty() ? 0 : records.size() - 1; }
};

GapStats gap_stats(const GapSequence& gaps);

struct ConvergenceRow {
  Natural n = 0;
  Natural g = 0;
  Rational ratio;      // g / n
  Rational theta_lo;
  Rational theta_hi;
  Rational deviation;  // ratio - (theta_lo + theta_hi) / 2
};

std::vector<ConvergenceRow> convergence_experiment(Natural s, std::span<const Natural> n_list,
                                                   const RkTable& table);

enum class Rounding { down, up, nearest };

// Fixed-point rendering with `digits` fractional digits.
std::string to_decimal(const Rational& q, unsigned digits, Rounding mode = Rounding::nearest);
// "p/q", or "p" for integers.
std::string to_fraction(const Rational& q);

}  // namespace gpfree
