#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "gpfree/gpfree.h"

// Exercises the shared library through its C surface only.

namespace {

gpf_rktable* compute(unsigned k, uint32_t ell_max) {
  gpf_rktable* t = nullptr;
  REQUIRE(gpf_rktable_compute(k, ell_max, 0, &t) == GPF_OK);
  REQUIRE(t != nullptr);
  return t;
}

}  // namespace

TEST_CASE("table handle") {
  gpf_rktable* t = compute(3, 14);
  CHECK(gpf_rktable_k(t) == 3);
  CHECK(gpf_rktable_ell_max(t) == 14);
  CHECK(gpf_rktable_value(t, 14) == 8);
  CHECK(gpf_rktable_value(t, 15) == 0);
  CHECK(gpf_rktable_value(t, 0) == 0);

  const size_t n = gpf_rktable_witness(t, 9, nullptr, 0);
  CHECK(n == 5);
  std::vector<uint32_t> w(n);
  CHECK(gpf_rktable_witness(t, 9, w.data(), w.size()) == 5);
  CHECK(w == std::vector<uint32_t>{0, 1, 3, 7, 8});

  uint32_t partial[2] = {99, 99};
  CHECK(gpf_rktable_witness(t, 9, partial, 2) == 5);
  CHECK(partial[1] == 1);

  gpf_rktable* longer = nullptr;
  CHECK(gpf_rktable_extend(t, 20, 0, &longer) == GPF_OK);
  CHECK(gpf_rktable_value(longer, 20) == 9);
  gpf_rktable_free(longer);
  gpf_rktable_free(t);
}

TEST_CASE("errors set status, message and detail") {
  gpf_rktable* t = reinterpret_cast<gpf_rktable*>(0x1);
  CHECK(gpf_rktable_compute(1, 10, 0, &t) == GPF_ERR_INVALID_ARGUMENT);
  CHECK(t == nullptr);
  CHECK(std::string(gpf_last_error()).find("k must be >= 2") != std::string::npos);
  CHECK(std::string(gpf_status_name(GPF_ERR_CORRUPT_CACHE)) == "corrupt-cache");

  CHECK(gpf_rktable_compute(3, 60, 300, &t) == GPF_ERR_BUDGET_EXHAUSTED);
  REQUIRE(t != nullptr);
  const uint32_t verified = gpf_rktable_ell_max(t);
  CHECK(verified >= 1);
  CHECK(gpf_last_error_detail() == gpf_rktable_value(t, verified));
  gpf_rktable_free(t);

  gpf_rktable* shallow = compute(3, 3);
  gpf_gresult* r = nullptr;
  CHECK(gpf_g_compute(shallow, 2, 100, 0, &r) == GPF_ERR_TABLE_INSUFFICIENT);
  CHECK(gpf_last_error_detail() == 7);
  CHECK(r == nullptr);
  gpf_rktable_free(shallow);

  uint32_t v = 0;
  CHECK(gpf_rk_oracle(3, 30, 0, &v) == GPF_ERR_ORACLE_CAP);
  CHECK(gpf_last_error_detail() == 25);
  CHECK(gpf_rk_oracle(3, 9, 0, &v) == GPF_OK);
  CHECK(v == 5);
  CHECK(gpf_rk_oracle(3, 9, 0, nullptr) == GPF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("progression predicates") {
  const uint32_t ap[] = {0, 2, 4};
  int out = -1;
  CHECK(gpf_has_k_term_ap(ap, 3, 3, &out) == GPF_OK);
  CHECK(out == 1);
  const uint64_t gp[] = {1, 4, 16};
  CHECK(gpf_has_k_term_gp(gp, 3, 3, 2, &out) == GPF_OK);
  CHECK(out == 1);
  CHECK(gpf_has_k_term_gp(gp, 3, 3, 3, &out) == GPF_OK);
  CHECK(out == 0);
}

TEST_CASE("g through the C API") {
  gpf_rktable* t = compute(3, 30);
  gpf_gresult* r = nullptr;
  REQUIRE(gpf_g_compute(t, 2, 8, GPF_G_WITNESS | GPF_G_PER_CHAIN, &r) == GPF_OK);
  CHECK(gpf_gresult_value(r) == 7);
  std::vector<uint64_t> w(gpf_gresult_witness(r, nullptr, 0));
  gpf_gresult_witness(r, w.data(), w.size());
  CHECK(w == std::vector<uint64_t>{1, 2, 3, 5, 6, 7, 8});
  CHECK(gpf_gresult_chain_count(r) == 4);
  uint64_t root = 0;
  uint32_t len = 0, rv = 0;
  CHECK(gpf_gresult_chain(r, 0, &root, &len, &rv) == GPF_OK);
  CHECK(root == 1);
  CHECK(len == 4);
  CHECK(rv == 3);
  CHECK(gpf_gresult_chain(r, 4, &root, &len, &rv) == GPF_ERR_INVALID_ARGUMENT);
  gpf_gresult_free(r);

  REQUIRE(gpf_g_compute(t, 2, 1'000'000, 0, &r) == GPF_OK);
  uint64_t total_roots = 0;
  for (size_t i = 0; i < gpf_gresult_group_count(r); ++i) {
    uint64_t roots = 0;
    CHECK(gpf_gresult_group(r, i, &len, &roots, &rv) == GPF_OK);
    total_roots += roots;
  }
  CHECK(total_roots == 500'000);
  CHECK(gpf_gresult_chain_count(r) == 0);
  gpf_gresult_free(r);

  uint64_t v = 0;
  CHECK(gpf_g_bruteforce(3, 2, 4, 0, &v) == GPF_OK);
  CHECK(v == 3);
  const uint64_t ratios[] = {2, 3};
  CHECK(gpf_g_multi_bruteforce(3, ratios, 2, 9, 0, &v) == GPF_OK);
  CHECK(v == 7);
  CHECK(gpf_g_multi_bruteforce(3, ratios, 0, 9, 0, &v) == GPF_ERR_INVALID_ARGUMENT);
  CHECK(gpf_g_multi_bruteforce(3, ratios, 2, 40, 0, &v) == GPF_ERR_ORACLE_CAP);

  uint32_t depth = 0;
  CHECK(gpf_required_ell_max(2, 4, &depth) == GPF_OK);
  CHECK(depth == 3);
  gpf_rktable_free(t);
}

TEST_CASE("theta, digits and decimals") {
  gpf_rktable* t = compute(3, 21);
  gpf_theta* th = nullptr;
  REQUIRE(gpf_theta_compute(t, 2, 4, &th) == GPF_OK);
  CHECK(std::string(gpf_theta_partial(th)) == "27/32");
  CHECK(std::string(gpf_theta_tail(th)) == "1/256");
  CHECK(std::string(gpf_theta_upper(th)) == "217/256");
  CHECK(gpf_theta_finite(th) == 0);
  gpf_theta_free(th);

  CHECK(gpf_theta_compute(t, 2, 500, &th) == GPF_ERR_INVALID_ARGUMENT);

  uint32_t digits[6];
  CHECK(gpf_theta_digits(t, 2, 6, digits) == GPF_OK);
  CHECK(std::vector<uint32_t>(digits, digits + 6) == std::vector<uint32_t>{1, 1, 0, 1, 1, 0});
  std::vector<uint32_t> many(30);
  CHECK(gpf_theta_digits(t, 2, 30, many.data()) == GPF_ERR_TABLE_INSUFFICIENT);
  gpf_rktable_free(t);

  gpf_rktable* t2 = compute(2, 5);
  REQUIRE(gpf_theta_compute(t2, 3, -1, &th) == GPF_OK);
  CHECK(std::string(gpf_theta_partial(th)) == "2/3");
  CHECK(std::string(gpf_theta_tail(th)) == "0");
  CHECK(gpf_theta_finite(th) == 1);
  gpf_theta_free(th);
  gpf_rktable_free(t2);

  char buf[32];
  size_t needed = 0;
  CHECK(gpf_rational_to_decimal("27/32", 5, GPF_ROUND_DOWN, buf, sizeof buf, &needed) == GPF_OK);
  CHECK(std::string(buf) == "0.84375");
  CHECK(needed == 7);
  CHECK(gpf_rational_to_decimal("2/3", 3, GPF_ROUND_UP, buf, 4, &needed) == GPF_OK);
  CHECK(std::string(buf) == "0.6");
  CHECK(needed == 5);
  CHECK(gpf_rational_to_decimal("x/3", 3, GPF_ROUND_UP, buf, 4, &needed) == GPF_ERR_INVALID_ARGUMENT);
  CHECK(gpf_rational_to_decimal("1/0", 3, GPF_ROUND_UP, buf, 4, &needed) == GPF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("gaps, convergence and compare") {
  gpf_rktable* t = compute(3, 20);
  gpf_gaps* g = nullptr;
  REQUIRE(gpf_gaps_compute(t, &g) == GPF_OK);
  std::vector<uint32_t> u(gpf_gaps_u(g, nullptr, 0));
  gpf_gaps_u(g, u.data(), u.size());
  CHECK(u == std::vector<uint32_t>{1, 2, 4, 5, 9, 11, 13, 14, 20});
  std::vector<uint32_t> rec(gpf_gaps_records(g, nullptr, 0));
  gpf_gaps_records(g, rec.data(), rec.size());
  CHECK(rec == std::vector<uint32_t>{1, 2, 4, 8});
  CHECK(gpf_gaps_running_max(g, nullptr, 0) == 8);
  gpf_gaps_free(g);

  const uint64_t ns[] = {4, 1000};
  gpf_convergence* c = nullptr;
  REQUIRE(gpf_convergence_compute(t, 2, ns, 2, &c) == GPF_OK);
  CHECK(gpf_convergence_rows(c) == 2);
  CHECK(gpf_convergence_g(c, 0) == 3);
  CHECK(std::string(gpf_convergence_field(c, 0, 0)) == "3/4");
  CHECK(std::string(gpf_convergence_field(c, 0, 7)).empty());
  gpf_convergence_free(c);

  gpf_compare* cmp = nullptr;
  REQUIRE(gpf_compare_compute(t, 2, 3, 9, &cmp) == GPF_OK);
  CHECK(gpf_compare_rows(cmp) == 9);
  uint64_t n = 0, a = 0, b = 0;
  CHECK(gpf_compare_row(cmp, 8, &n, &a, &b) == GPF_OK);
  CHECK(n == 9);
  CHECK(a == 8);
  CHECK(b == 8);
  // g_3^(3)(4) = 4 > g_3^(2)(4) = 3: no 3-term progression with ratio 3^d fits in {1..4}.
  CHECK(gpf_compare_first_violation(cmp) == 4);
  CHECK(gpf_compare_first_strict(cmp) == 0);
  gpf_compare_free(cmp);
  CHECK(gpf_compare_compute(t, 3, 2, 9, &cmp) == GPF_ERR_INVALID_ARGUMENT);
  gpf_rktable_free(t);
}

TEST_CASE("persistence through the C API") {
  const auto dir = std::filesystem::temp_directory_path() / "gpfree-capi-test";
  std::filesystem::remove_all(dir);
  gpf_rktable* t = nullptr;
  REQUIRE(gpf_cache_ensure(dir.c_str(), 3, 25, 0, &t) == GPF_OK);
  CHECK(gpf_rktable_ell_max(t) == 25);

  const auto file = (dir / "rk_k3.txt").string();
  gpf_rktable* loaded = nullptr;
  REQUIRE(gpf_rktable_load(file.c_str(), &loaded) == GPF_OK);
  CHECK(gpf_rktable_value(loaded, 25) == gpf_rktable_value(t, 25));

  gpf_rktable* shorter = compute(3, 10);
  CHECK(gpf_rktable_save(shorter, file.c_str()) == GPF_ERR_WOULD_TRUNCATE);
  CHECK(gpf_rktable_load((dir / "missing.txt").c_str(), &loaded) == GPF_ERR_NOT_FOUND);
  CHECK(loaded == nullptr);

  std::FILE* f = std::fopen(file.c_str(), "r+b");
  REQUIRE(f != nullptr);
  std::fseek(f, -3, SEEK_END);
  std::fputc('9', f);
  std::fclose(f);
  CHECK(gpf_rktable_load(file.c_str(), &loaded) == GPF_ERR_CORRUPT_CACHE);

  char buf[4096];
  CHECK(gpf_cache_default_dir(buf, sizeof buf) > 0);

  gpf_rktable_free(shorter);
  gpf_rktable_free(t);
  std::filesystem::remove_all(dir);
}
