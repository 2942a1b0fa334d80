#include "gpfree/constant.hpp"

#include <string>

namespace gpfree {

namespace {

void require_base(Natural s) {
  if (s < 2) throw InvalidArgument("ratio base s must be >= 2, got " + std::to_string(s));
}

Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

// Integers in (0, y] not divisible by s, for integer y >= 0 and negative y alike.
Integer nondivisible_up_to(const Integer& y, const Integer& s) {
  Integer multiples;
  mpz_fdiv_q(multiples.get_mpz_t(), y.get_mpz_t(), s.get_mpz_t());
  return y - multiples;
}

}  // namespace

Integer to_integer(Natural n) {
  static_assert(sizeof(unsigned long) == sizeof(Natural), "Natural must match unsigned long");
  return Integer(static_cast<unsigned long>(n));
}

Natural to_natural(const Integer& z) {
  if (sgn(z) < 0 || !z.fits_ulong_p())
    throw OverflowError("value " + z.get_str() + " does not fit in 64 bits");
  return z.get_ui();
}

Integer count_nondivisible(const Rational& x, const Rational& y, Natural s) {
  require_base(s);
  if (x >= y) throw InvalidArgument("count_nondivisible needs x < y");
  const Integer base = to_integer(s);
  return nondivisible_up_to(floor_of(y), base) - nondivisible_up_to(floor_of(x), base);
}

Rational inverse_power(Natural s, long e) {
  Integer p;
  const unsigned long magnitude = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  mpz_ui_pow_ui(p.get_mpz_t(), s, magnitude);
  if (e < 0) return Rational(p);
  Rational out(1, 1);
  out /= p;
  return out;
}

ThetaApproximation theta_partial(Natural s, const GapSequence& gaps, std::uint32_t terms) {
  require_base(s);
  if (gaps.u.empty()) throw InvalidArgument("gap sequence is empty");

  ThetaApproximation out;
  out.k = gaps.k;
  out.s = s;
  if (gaps.degenerate()) {
    // r_2 is identically 1, so u = (1) and the series stops after one term.
    out.terms = 1;
    out.partial = Rational(static_cast<unsigned long>(s - 1), static_cast<unsigned long>(s));
    out.partial.canonicalize();
    out.tail_bound = 0;
    out.finite = true;
    return out;
  }
  if (terms > gaps.u.size())
    throw InvalidArgument("requested " + std::to_string(terms) + " terms but only " +
                          std::to_string(gaps.u.size()) + " values of u_m are known");

  out.terms = terms;
  Rational sum = 0;
  for (std::uint32_t m = 0; m < terms; ++m) sum += inverse_power(s, gaps.u[m]);
  out.partial = sum * to_integer(s - 1);
  out.tail_bound = terms < gaps.u.size() ? inverse_power(s, static_cast<long>(gaps.u[terms]) - 1)
                                         : inverse_power(s, gaps.u[terms - 1]);
  return out;
}

ThetaApproximation theta_partial(Natural s, const GapSequence& gaps) {
  return theta_partial(s, gaps, static_cast<std::uint32_t>(gaps.u.size()));
}

std::vector<std::uint32_t> DigitStream::unscaled() const {
  std::vector<std::uint32_t> out(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) out[i] = digits[i] != 0 ? 1 : 0;
  return out;
}

Rational DigitStream::value() const {
  Rational sum = 0;
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits[i] != 0) sum += inverse_power(s, static_cast<long>(i + 1)) * digits[i];
  return sum;
}

DigitStream theta_digits(Natural s, const GapSequence& gaps, std::uint32_t length) {
  require_base(s);
  if (!gaps.degenerate() && length > gaps.source_ell_max)
    throw TableInsufficient(length, gaps.source_ell_max);

  DigitStream out{gaps.k, s, length, std::vector<std::uint32_t>(length, 0), {}};
  for (std::uint32_t pos : gaps.u) {
    if (pos > length) break;
    out.digits[pos - 1] = static_cast<std::uint32_t>(s - 1);
    out.one_positions.push_back(pos);
  }
  return out;
}

GapStats gap_stats(const GapSequence& gaps) {
  GapStats out;
  out.diffs = gaps.gaps();
  std::uint32_t best = 0;
  for (std::size_t i = 0; i < out.diffs.size(); ++i) {
    if (out.diffs[i] > best) {
      best = out.diffs[i];
      out.records.push_back({static_cast<std::uint32_t>(i + 1), best});
    }
    out.running_max.push_back(best);
  }
  return out;
}

std::vector<ConvergenceRow> convergence_experiment(Natural s, std::span<const Natural> n_list,
                                                   const RkTable& table) {
  const ThetaApproximation theta = theta_partial(s, min_inverse(table));
  const Rational mid = theta.midpoint();
  std::vector<ConvergenceRow> rows;
  for (Natural n : n_list) {
    ConvergenceRow row;
    row.n = n;
    row.g = g_formula(table.k(), s, n, table).value;
    row.ratio = Rational(to_integer(row.g), to_integer(n));
    row.ratio.canonicalize();
    row.theta_lo = theta.lower();
    row.theta_hi = theta.upper();
    row.deviation = row.ratio - mid;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_decimal(const Rational& q, unsigned digits, Rounding mode) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const Rational scaled = q * scale;
  Integer z;
  switch (mode) {
    case Rounding::down: z = floor_of(scaled); break;
    case Rounding::up: z = ceil_of(scaled); break;
    case Rounding::nearest: z = floor_of(scaled + Rational(1, 2)); break;
  }
  const bool negative = sgn(z) < 0;
  const Integer magnitude = abs(z);
  const Integer whole = magnitude / scale;
  const Integer frac = magnitude % scale;

  std::string out = negative ? "-" : "";
  out += whole.get_str();
  if (digits > 0) {
    std::string f = frac.get_str();
    out += '.';
    out += std::string(digits - f.size(), '0');
    out += f;
  }
  return out;
}

std::string to_fraction(const Rational& q) { return q.get_str(); }

}  // namespace gpfree
