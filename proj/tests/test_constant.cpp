#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "gpfree/constant.hpp"

using namespace gpfree;

namespace {

Rational q(long p, long d) {
  Rational out(p, d);
  out.canonicalize();
  return out;
}

// Counts integers in (x, y] not divisible by s one by one.
long count_by_scan(const Rational& x, const Rational& y, long s) {
  long n = 0;
  Integer start = floor(x.get_d()) - 2;
  for (Integer i = start; Rational(i) <= y; ++i)
    if (Rational(i) > x && i % s != 0) ++n;
  return n;
}

const GapSequence& k3_gaps() {
  static const GapSequence g = min_inverse(rk_table(3, 45));
  return g;
}

}  // namespace

TEST_CASE("count_nondivisible examples") {
  CHECK(count_nondivisible(0, 4, 2) == 2);
  CHECK(count_nondivisible(q(5, 2), 5, 2) == 2);  // roots of length 2 for n = 10, s = 2
  for (long s : {2, 3, 7})
    for (long h : {1, 5, 40}) CHECK(count_nondivisible(0, s * h, s) == (s - 1) * h);
  CHECK(count_nondivisible(-7, q(-1, 3), 3) == 4);  // -7 < n <= -1/3: -6..-1 minus {-6,-3}
  CHECK_THROWS_AS(count_nondivisible(3, 3, 2), InvalidArgument);
  CHECK_THROWS_AS(count_nondivisible(0, 3, 1), InvalidArgument);
}

TEST_CASE("count_nondivisible agrees with a scan and stays within s-1 of the density estimate") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 3000; ++iter) {
    const long s = 2 + static_cast<long>(rng() % 12);
    const Rational x = q(static_cast<long>(rng() % 4001) - 2000, 1 + static_cast<long>(rng() % 50));
    const Rational y = x + q(1 + static_cast<long>(rng() % 3000), 1 + static_cast<long>(rng() % 50));
    const Integer n = count_nondivisible(x, y, static_cast<Natural>(s));
    CHECK(n == count_by_scan(x, y, s));
    const Rational err = abs(Rational(n) - Rational(s - 1, s) * (y - x));
    CHECK(err <= s - 1);
  }
}

TEST_CASE("theta_partial examples") {
  const auto t = theta_partial(2, k3_gaps(), 4);
  CHECK(t.partial == q(27, 32));
  CHECK(t.tail_bound == q(1, 256));
  CHECK_FALSE(t.finite);

  const auto zero = theta_partial(5, k3_gaps(), 0);
  CHECK(zero.partial == 0);
  CHECK(zero.tail_bound == 1);

  for (Natural s : {2u, 3u, 5u}) {
    const auto d = theta_partial(s, min_inverse(rk_table(2, 8)), 1);
    CHECK(d.finite);
    CHECK(d.partial == q(static_cast<long>(s) - 1, static_cast<long>(s)));
    CHECK(d.tail_bound == 0);
  }

  CHECK_THROWS_AS(theta_partial(2, k3_gaps(), 1000), InvalidArgument);
}

TEST_CASE("tail bound without a known next term") {
  const auto gaps = min_inverse(rk_table(3, 14));  // u = 1,2,4,5,9,11,13,14
  const auto t = theta_partial(2, gaps);
  CHECK(t.terms == 8);
  CHECK(t.tail_bound == inverse_power(2, 14));
}

TEST_CASE("enclosures nest") {
  const auto& gaps = k3_gaps();
  for (Natural s : {2u, 3u, 10u})
    for (std::uint32_t m = 0; m <= gaps.u.size(); ++m) {
      const auto outer = theta_partial(s, gaps, m);
      CHECK(outer.partial >= 0);
      CHECK(outer.partial < 1);
      for (std::uint32_t later = m + 1; later <= gaps.u.size(); ++later) {
        const auto inner = theta_partial(s, gaps, later);
        CHECK(inner.lower() >= outer.lower());
        CHECK(inner.upper() <= outer.upper());
      }
    }
}

TEST_CASE("theta_digits") {
  const auto d = theta_digits(2, k3_gaps(), 6);
  CHECK(d.digits == std::vector<std::uint32_t>{1, 1, 0, 1, 1, 0});
  CHECK(d.one_positions == std::vector<std::uint32_t>{1, 2, 4, 5});

  const auto deg = theta_digits(7, min_inverse(rk_table(2, 2)), 3);
  CHECK(deg.digits == std::vector<std::uint32_t>{6, 0, 0});

  for (Natural s : {2u, 5u}) {
    const auto one = theta_digits(s, k3_gaps(), 1);
    CHECK(one.digits == std::vector<std::uint32_t>{static_cast<std::uint32_t>(s - 1)});
  }

  CHECK_THROWS_AS(theta_digits(2, k3_gaps(), 46), TableInsufficient);
}

TEST_CASE("digit prefix reproduces the partial sum") {
  const auto& gaps = k3_gaps();
  for (Natural s : {2u, 3u, 7u})
    for (std::uint32_t len = 1; len <= gaps.source_ell_max; ++len) {
      const auto stream = theta_digits(s, gaps, len);
      const auto approx = theta_partial(s, gaps, static_cast<std::uint32_t>(stream.one_positions.size()));
      CHECK(stream.value() == approx.partial);
      const auto ones = stream.unscaled();
      Rational unscaled = 0;
      for (std::size_t i = 0; i < ones.size(); ++i) unscaled += inverse_power(s, static_cast<long>(i + 1)) * ones[i];
      CHECK(unscaled * to_integer(s - 1) == approx.partial);
    }
}

TEST_CASE("gap_stats") {
  GapSequence seq{3, 20, {1, 2, 4, 5, 9, 11, 13, 14, 20}};
  const auto st = gap_stats(seq);
  CHECK(st.diffs == std::vector<std::uint32_t>{1, 2, 1, 4, 2, 2, 1, 6});
  CHECK(st.running_max.back() == 6);
  CHECK(st.running_max[3] == 4);
  CHECK(st.records.back().m == 8);
  CHECK(st.records.back().gap == 6);
  CHECK(st.increases() == 3);

  const auto two = gap_stats(GapSequence{3, 2, {1, 2}});
  CHECK(two.diffs == std::vector<std::uint32_t>{1});
  CHECK(two.increases() == 0);

  CHECK(gap_stats(GapSequence{2, 9, {1}}).diffs.empty());

  const auto real = gap_stats(min_inverse(rk_table(3, 20)));
  CHECK(real.diffs == std::vector<std::uint32_t>{1, 2, 1, 4, 2, 2, 1, 6});
}

TEST_CASE("convergence_experiment") {
  const auto table = rk_table(3, 21);
  const Natural four[] = {4};
  const auto rows = convergence_experiment(2, four, table);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].g == 3);
  CHECK(rows[0].ratio == q(3, 4));
  CHECK(rows[0].theta_lo <= rows[0].theta_hi);

  const auto t2 = rk_table(2, 40);
  for (Natural s : {2u, 3u, 5u}) {
    const Natural ns[] = {s * 7, s * 1000};
    for (const auto& row : convergence_experiment(s, ns, t2)) {
      CHECK(row.deviation == 0);
      CHECK(row.ratio == q(static_cast<long>(s) - 1, static_cast<long>(s)));
    }
  }

  const Natural too_big[] = {1 << 22};
  CHECK_THROWS_AS(convergence_experiment(2, too_big, table), TableInsufficient);
}

TEST_CASE("decimal rendering") {
  CHECK(to_decimal(q(27, 32), 5, Rounding::down) == "0.84375");
  CHECK(to_decimal(q(2, 3), 4, Rounding::down) == "0.6666");
  CHECK(to_decimal(q(2, 3), 4, Rounding::up) == "0.6667");
  CHECK(to_decimal(q(2, 3), 4, Rounding::nearest) == "0.6667");
  CHECK(to_decimal(q(-1, 8), 2, Rounding::nearest) == "-0.12");
  CHECK(to_decimal(q(-1, 3), 3, Rounding::down) == "-0.334");
  CHECK(to_decimal(q(5, 1), 2) == "5.00");
  CHECK(to_fraction(q(6, 8)) == "3/4");
  CHECK(to_fraction(q(4, 2)) == "2");
}
