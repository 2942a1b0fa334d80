#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "gpfree/apfree.hpp"

using namespace gpfree;

namespace {

// Lexicographically least AP-free subset of {0..ell-1} of the given size,
// by plain combination enumeration in lexicographic order.
std::vector<Element> lex_least_by_combinations(unsigned k, std::uint32_t ell, std::uint32_t size) {
  std::vector<Element> combo(size);
  for (std::uint32_t i = 0; i < size; ++i) combo[i] = i;
  while (true) {
    if (!has_k_term_ap(combo, k)) return combo;
    std::int64_t i = static_cast<std::int64_t>(size) - 1;
    while (i >= 0 && combo[i] == ell - size + i) --i;
    if (i < 0) return {};
    ++combo[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
  }
}

}  // namespace

TEST_CASE("has_k_term_ap on small sets") {
  CHECK(has_k_term_ap(std::vector<Element>{0, 2, 4}, 3));
  CHECK_FALSE(has_k_term_ap(std::vector<Element>{0, 1, 3, 7, 8}, 3));
  CHECK_FALSE(has_k_term_ap(std::vector<Element>{5}, 2));
  CHECK(has_k_term_ap(std::vector<Element>{5, 9}, 2));
  CHECK(has_k_term_ap(std::vector<Element>{8, 1, 15, 22}, 4));  // unsorted input
  CHECK_FALSE(has_k_term_ap(std::vector<Element>{}, 3));
  CHECK_THROWS_AS(has_k_term_ap(std::vector<Element>{1, 2}, 1), InvalidArgument);
}

TEST_CASE("has_k_term_ap agrees with a direct scan over (a, d)") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 2000; ++iter) {
    const unsigned k = 2 + rng() % 4;
    std::vector<Element> set;
    std::vector<bool> in(40, false);
    for (Element x = 0; x < 40; ++x)
      if (rng() % 3 == 0) {
        set.push_back(x);
        in[x] = true;
      }
    bool expected = false;
    for (std::uint32_t a = 0; a < 40 && !expected; ++a)
      for (std::uint32_t d = 1; a + (k - 1) * d < 40 && !expected; ++d) {
        bool all = true;
        for (unsigned j = 0; j < k; ++j) all = all && in[a + j * d];
        expected = all;
      }
    std::shuffle(set.begin(), set.end(), rng);
    CHECK(has_k_term_ap(set, k) == expected);
  }
}

TEST_CASE("rk_exact small values") {
  CHECK(rk_exact(3, 2).value == 2);
  CHECK(rk_exact(3, 3).value == 2);
  CHECK(rk_exact(2, 5).value == 1);
  CHECK(rk_exact(3, 1).value == 1);

  const auto nine = rk_exact(3, 9);
  CHECK(nine.value == 5);
  CHECK(nine.witness == std::vector<Element>{0, 1, 3, 7, 8});
}

TEST_CASE("rk_exact rejects bad arguments") {
  CHECK_THROWS_AS(rk_exact(1, 5), InvalidArgument);
  CHECK_THROWS_AS(rk_exact(3, 0), InvalidArgument);
  CHECK_THROWS_AS(rk_exact(3, kMaxEll + 1), InvalidArgument);
}

TEST_CASE("rk_bruteforce_oracle") {
  CHECK(rk_bruteforce_oracle(3, 4) == 3);
  CHECK(rk_bruteforce_oracle(4, 4) == 3);
  CHECK(rk_bruteforce_oracle(3, 1) == 1);
  CHECK(rk_bruteforce_oracle(3, 9) == 5);
  CHECK_THROWS_AS(rk_bruteforce_oracle(3, 26), OracleCapExceeded);
  CHECK(rk_bruteforce_oracle(3, 12, 12) == 6);
  CHECK_THROWS_AS(rk_bruteforce_oracle(3, 13, 12), OracleCapExceeded);
}

TEST_CASE("rk_table frozen values") {
  const auto t3 = rk_table(3, 14);
  const std::vector<std::uint32_t> expect3{1, 2, 2, 3, 4, 4, 4, 4, 5, 5, 6, 6, 7, 8};
  CHECK(std::vector<std::uint32_t>(t3.values().begin(), t3.values().end()) == expect3);

  const auto t2 = rk_table(2, 6);
  CHECK(std::vector<std::uint32_t>(t2.values().begin(), t2.values().end()) ==
        std::vector<std::uint32_t>{1, 1, 1, 1, 1, 1});

  const auto t5 = rk_table(5, 4);
  CHECK(std::vector<std::uint32_t>(t5.values().begin(), t5.values().end()) ==
        std::vector<std::uint32_t>{1, 2, 3, 4});
}

TEST_CASE("solver matches the exhaustive oracle and the lex-least witness") {
  for (unsigned k : {2u, 3u, 4u, 5u}) {
    const auto table = rk_table(k, 16);
    for (std::uint32_t ell = 1; ell <= 16; ++ell) {
      CAPTURE(k);
      CAPTURE(ell);
      CHECK(table.value(ell) == rk_bruteforce_oracle(k, ell));
      const auto w = table.witness(ell);
      CHECK(std::vector<Element>(w.begin(), w.end()) == lex_least_by_combinations(k, ell, table.value(ell)));
    }
  }
}

TEST_CASE("table invariants and witness reuse") {
  for (unsigned k : {3u, 4u}) {
    const auto table = rk_table(k, 40);
    for (std::uint32_t ell = 1; ell <= table.ell_max(); ++ell) {
      const auto w = table.witness(ell);
      CHECK(w.size() == table.value(ell));
      CHECK_FALSE(has_k_term_ap(w, k));
      if (ell > 1) {
        const auto step = table.value(ell) - table.value(ell - 1);
        CHECK((step == 0 || step == 1));
      }
    }
    // Extending a prefix reproduces the table built in one go.
    CHECK(extend_table(table.prefix(17), 40) == table);
    CHECK(extend_table(table, 20) == table);
  }
}

TEST_CASE("determinism across runs") {
  CHECK(rk_table(3, 35) == rk_table(3, 35));
}

TEST_CASE("RkTable constructor rejects invalid tables") {
  CHECK_THROWS_AS(RkTable(3, {}, {}), InvalidArgument);
  CHECK_THROWS_AS(RkTable(3, {1, 2, 3}, {{0}, {0, 1}, {0, 1, 2}}), InvalidArgument);  // r_3(3) = 3
  CHECK_THROWS_AS(RkTable(3, {1, 2}, {{0}, {0}}), InvalidArgument);                  // witness size
  CHECK_THROWS_AS(RkTable(3, {1, 2}, {{0}, {1, 0}}), InvalidArgument);               // unsorted
  CHECK_THROWS_AS(RkTable(4, {1, 2, 3, 3, 4}, {{0}, {0, 1}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2, 3}}),
                  InvalidArgument);  // AP in witness
  CHECK_THROWS_AS(RkTable(3, {1, 2, 2, 4}, {{0}, {0, 1}, {0, 1}, {0, 1, 3, 4}}), InvalidArgument);
}

TEST_CASE("budget exhaustion carries the verified prefix") {
  SearchBudget tiny{200};
  try {
    (void)rk_table(3, 40, tiny);
    FAIL("expected budget exhaustion");
  } catch (const BudgetExhausted& e) {
    REQUIRE(e.verified_prefix().has_value());
    const auto& prefix = *e.verified_prefix();
    CHECK(prefix.ell_max() + 1 == e.ell());
    CHECK(prefix == rk_table(3, prefix.ell_max()));
    CHECK(e.lower_bound() == prefix.value(prefix.ell_max()));
    CHECK(e.code() == Errc::budget_exhausted);
  }
}

TEST_CASE("min_inverse") {
  const auto gaps = min_inverse(rk_table(3, 14));
  CHECK(gaps.u == std::vector<std::uint32_t>{1, 2, 4, 5, 9, 11, 13, 14});
  CHECK(gaps.source_ell_max == 14);

  const auto degenerate = min_inverse(rk_table(2, 10));
  CHECK(degenerate.u == std::vector<std::uint32_t>{1});
  CHECK(degenerate.degenerate());

  for (unsigned k : {3u, 4u, 5u}) CHECK(min_inverse(rk_table(k, 12)).u.front() == 1);
}

TEST_CASE("gap sequence structure") {
  const auto table = rk_table(3, 45);
  const auto gaps = min_inverse(table);
  for (std::size_t m = 0; m < gaps.u.size(); ++m) {
    CHECK(gaps.u[m] >= m + 1);
    if (m + 1 < gaps.u.size()) {
      CHECK(gaps.u[m] < gaps.u[m + 1]);
      // u_{m+1} = 1 + max r^-1(m)
      std::uint32_t last = 0;
      for (std::uint32_t ell = 1; ell <= table.ell_max(); ++ell)
        if (table.value(ell) == m + 1) last = ell;
      CHECK(gaps.u[m + 1] == last + 1);
    }
  }
}
