#include "gpfree/gpfree.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "gpfree/apfree.hpp"
#include "gpfree/cache_store.hpp"
#include "gpfree/constant.hpp"
#include "gpfree/geoprog.hpp"

struct gpf_rktable {
  gpfree::RkTable table;
};

struct gpf_gaps {
  gpfree::GapSequence seq;
  gpfree::GapStats stats;
  std::vector<std::uint32_t> record_positions;
};

struct gpf_gresult {
  gpfree::GResult result;
};

struct gpf_theta {
  gpfree::ThetaApproximation approx;
  std::string partial;
  std::string tail;
  std::string upper;
};

struct gpf_convergence {
  struct Row {
    std::uint64_t n;
    std::uint64_t g;
    std::string fields[4];
  };
  std::vector<Row> rows;
};

struct gpf_compare {
  gpfree::MonotonicityReport report;
};

namespace {

thread_local std::string last_error;
thread_local std::uint64_t last_detail = 0;

gpf_status status_of(gpfree::Errc code) {
  using gpfree::Errc;
  switch (code) {
    case Errc::invalid_argument: return GPF_ERR_INVALID_ARGUMENT;
    case Errc::budget_exhausted: return GPF_ERR_BUDGET_EXHAUSTED;
    case Errc::table_insufficient: return GPF_ERR_TABLE_INSUFFICIENT;
    case Errc::overflow: return GPF_ERR_OVERFLOW;
    case Errc::oracle_cap: return GPF_ERR_ORACLE_CAP;
    case Errc::io: return GPF_ERR_IO;
    case Errc::corrupt_cache: return GPF_ERR_CORRUPT_CACHE;
    case Errc::version_mismatch: return GPF_ERR_VERSION_MISMATCH;
    case Errc::would_truncate: return GPF_ERR_WOULD_TRUNCATE;
    case Errc::not_found: return GPF_ERR_NOT_FOUND;
  }
  return GPF_ERR_INTERNAL;
}

template <class F>
gpf_status guarded(F&& body) {
  last_error.clear();
  last_detail = 0;
  try {
    body();
    return GPF_OK;
  } catch (const gpfree::TableInsufficient& e) {
    last_error = e.what();
    last_detail = e.required();
    return GPF_ERR_TABLE_INSUFFICIENT;
  } catch (const gpfree::BudgetExhausted& e) {
    last_error = e.what();
    last_detail = e.lower_bound();
    return GPF_ERR_BUDGET_EXHAUSTED;
  } catch (const gpfree::OracleCapExceeded& e) {
    last_error = e.what();
    last_detail = e.cap();
    return GPF_ERR_ORACLE_CAP;
  } catch (const gpfree::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GPF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GPF_ERR_INTERNAL;
  }
}

template <class T>
size_t copy_out(const std::vector<T>& src, T* buf, size_t cap) {
  if (buf) std::copy_n(src.begin(), std::min(cap, src.size()), buf);
  return src.size();
}

void require(const void* p, const char* what) {
  if (!p) throw gpfree::InvalidArgument(std::string(what) + " must not be null");
}

gpfree::SearchBudget budget_of(std::uint64_t nodes) {
  gpfree::SearchBudget b;
  if (nodes != 0) b.max_nodes = nodes;
  return b;
}

// Runs a table-producing call; on budget exhaustion hands back the verified prefix.
template <class F>
gpf_status produce_table(gpf_rktable** out, F&& make) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(out, "out");
    try {
      *out = new gpf_rktable{make()};
    } catch (const gpfree::BudgetExhausted& e) {
      if (e.verified_prefix()) *out = new gpf_rktable{*e.verified_prefix()};
      throw;
    }
  });
}

}  // namespace

extern "C" {

const char* gpf_status_name(gpf_status status) {
  switch (status) {
    case GPF_OK: return "ok";
    case GPF_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case GPF_ERR_BUDGET_EXHAUSTED: return "budget-exhausted";
    case GPF_ERR_TABLE_INSUFFICIENT: return "table-insufficient";
    case GPF_ERR_OVERFLOW: return "overflow";
    case GPF_ERR_ORACLE_CAP: return "oracle-cap";
    case GPF_ERR_IO: return "io";
    case GPF_ERR_CORRUPT_CACHE: return "corrupt-cache";
    case GPF_ERR_VERSION_MISMATCH: return "version-mismatch";
    case GPF_ERR_WOULD_TRUNCATE: return "would-truncate";
    case GPF_ERR_NOT_FOUND: return "not-found";
    case GPF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* gpf_last_error(void) { return last_error.c_str(); }
uint64_t gpf_last_error_detail(void) { return last_detail; }

gpf_status gpf_rktable_compute(unsigned k, uint32_t ell_max, uint64_t node_budget, gpf_rktable** out) {
  return produce_table(out, [&] { return gpfree::rk_table(k, ell_max, budget_of(node_budget)); });
}

gpf_status gpf_rktable_extend(const gpf_rktable* base, uint32_t ell_max, uint64_t node_budget,
                              gpf_rktable** out) {
  return produce_table(out, [&] {
    require(base, "base");
    return gpfree::extend_table(base->table, ell_max, budget_of(node_budget));
  });
}

gpf_status gpf_rktable_load(const char* path, gpf_rktable** out) {
  return produce_table(out, [&] {
    require(path, "path");
    return gpfree::cache::load(path);
  });
}

gpf_status gpf_rktable_save(const gpf_rktable* table, const char* path) {
  return guarded([&] {
    require(table, "table");
    require(path, "path");
    gpfree::cache::save(table->table, path);
  });
}

gpf_status gpf_cache_ensure(const char* dir, unsigned k, uint32_t ell_max, uint64_t node_budget,
                            gpf_rktable** out) {
  return produce_table(out, [&] {
    const auto where = dir ? std::filesystem::path(dir) : gpfree::cache::default_dir();
    return gpfree::cache::ensure_table(where, k, ell_max, budget_of(node_budget));
  });
}

size_t gpf_cache_default_dir(char* buf, size_t cap) {
  const std::string dir = gpfree::cache::default_dir().string();
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, dir.size());
    std::memcpy(buf, dir.data(), n);
    buf[n] = '\0';
  }
  return dir.size();
}

void gpf_rktable_free(gpf_rktable* table) { delete table; }

unsigned gpf_rktable_k(const gpf_rktable* table) { return table ? table->table.k() : 0; }
uint32_t gpf_rktable_ell_max(const gpf_rktable* table) { return table ? table->table.ell_max() : 0; }

uint32_t gpf_rktable_value(const gpf_rktable* table, uint32_t ell) {
  if (!table || !table->table.covers(ell)) return 0;
  return table->table.value(ell);
}

size_t gpf_rktable_witness(const gpf_rktable* table, uint32_t ell, uint32_t* buf, size_t cap) {
  if (!table || !table->table.covers(ell)) return 0;
  const auto w = table->table.witness(ell);
  if (buf) std::copy_n(w.begin(), std::min(cap, w.size()), buf);
  return w.size();
}

gpf_status gpf_has_k_term_ap(const uint32_t* set, size_t count, unsigned k, int* out) {
  return guarded([&] {
    require(out, "out");
    if (count) require(set, "set");
    *out = gpfree::has_k_term_ap({set, count}, k) ? 1 : 0;
  });
}

gpf_status gpf_rk_oracle(unsigned k, uint32_t ell, uint32_t cap, uint32_t* out) {
  return guarded([&] {
    require(out, "out");
    *out = gpfree::rk_bruteforce_oracle(k, ell, cap ? cap : gpfree::kDefaultRkOracleCap);
  });
}

gpf_status gpf_gaps_compute(const gpf_rktable* table, gpf_gaps** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    auto g = new gpf_gaps{gpfree::min_inverse(table->table), {}, {}};
    g->stats = gpfree::gap_stats(g->seq);
    for (const auto& rec : g->stats.records) g->record_positions.push_back(rec.m);
    *out = g;
  });
}

void gpf_gaps_free(gpf_gaps* gaps) { delete gaps; }

size_t gpf_gaps_u(const gpf_gaps* gaps, uint32_t* buf, size_t cap) {
  return gaps ? copy_out(gaps->seq.u, buf, cap) : 0;
}
size_t gpf_gaps_diffs(const gpf_gaps* gaps, uint32_t* buf, size_t cap) {
  return gaps ? copy_out(gaps->stats.diffs, buf, cap) : 0;
}
size_t gpf_gaps_running_max(const gpf_gaps* gaps, uint32_t* buf, size_t cap) {
  return gaps ? copy_out(gaps->stats.running_max, buf, cap) : 0;
}
size_t gpf_gaps_records(const gpf_gaps* gaps, uint32_t* buf, size_t cap) {
  return gaps ? copy_out(gaps->record_positions, buf, cap) : 0;
}

gpf_status gpf_g_compute(const gpf_rktable* table, uint64_t s, uint64_t n, int flags, gpf_gresult** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    const unsigned k = table->table.k();
    const auto method = (flags & GPF_G_PER_CHAIN) ? gpfree::GMethod::direct : gpfree::GMethod::grouped;
    if ((flags & GPF_G_PER_CHAIN) && n > gpfree::kDirectIterationLimit)
      throw gpfree::InvalidArgument("per-chain breakdown is limited to n <= " +
                                    std::to_string(gpfree::kDirectIterationLimit));
    auto r = new gpf_gresult{gpfree::g_formula(k, s, n, table->table, method)};
    try {
      if (flags & GPF_G_WITNESS) r->result.witness = gpfree::g_witness(k, s, n, table->table);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

void gpf_gresult_free(gpf_gresult* result) { delete result; }
uint64_t gpf_gresult_value(const gpf_gresult* result) { return result ? result->result.value : 0; }
size_t gpf_gresult_group_count(const gpf_gresult* result) { return result ? result->result.per_length.size() : 0; }

gpf_status gpf_gresult_group(const gpf_gresult* result, size_t i, uint32_t* length, uint64_t* roots, uint32_t* r) {
  return guarded([&] {
    require(result, "result");
    if (i >= result->result.per_length.size()) throw gpfree::InvalidArgument("group index out of range");
    const auto& grp = result->result.per_length[i];
    if (length) *length = grp.length;
    if (roots) *roots = grp.roots;
    if (r) *r = grp.r;
  });
}

size_t gpf_gresult_chain_count(const gpf_gresult* result) {
  return result && result->result.per_chain ? result->result.per_chain->size() : 0;
}

gpf_status gpf_gresult_chain(const gpf_gresult* result, size_t i, uint64_t* root, uint32_t* length, uint32_t* r) {
  return guarded([&] {
    require(result, "result");
    if (!result->result.per_chain || i >= result->result.per_chain->size())
      throw gpfree::InvalidArgument("chain index out of range");
    const auto& c = (*result->result.per_chain)[i];
    if (root) *root = c.root;
    if (length) *length = c.length;
    if (r) *r = c.r;
  });
}

size_t gpf_gresult_witness(const gpf_gresult* result, uint64_t* buf, size_t cap) {
  if (!result || !result->result.witness) return 0;
  return copy_out(*result->result.witness, buf, cap);
}

gpf_status gpf_required_ell_max(uint64_t s, uint64_t n, uint32_t* out) {
  return guarded([&] {
    require(out, "out");
    if (n < 1) throw gpfree::InvalidArgument("n must be >= 1");
    *out = gpfree::required_ell_max(s, n);
  });
}

gpf_status gpf_has_k_term_gp(const uint64_t* set, size_t count, unsigned k, uint64_t s, int* out) {
  return guarded([&] {
    require(out, "out");
    if (count) require(set, "set");
    *out = gpfree::has_k_term_gp({set, count}, k, s) ? 1 : 0;
  });
}

gpf_status gpf_g_bruteforce(unsigned k, uint64_t s, uint32_t n, uint32_t cap, uint64_t* out) {
  return guarded([&] {
    require(out, "out");
    *out = gpfree::g_bruteforce(k, s, n, cap ? cap : gpfree::kDefaultGOracleCap);
  });
}

gpf_status gpf_g_multi_bruteforce(unsigned k, const uint64_t* ratios, size_t ratio_count, uint32_t n,
                                  uint32_t cap, uint64_t* out) {
  return guarded([&] {
    require(out, "out");
    if (ratio_count) require(ratios, "ratios");
    *out = gpfree::g_multi_ratio_bruteforce(k, {ratios, ratio_count}, n, cap ? cap : gpfree::kDefaultGOracleCap);
  });
}

gpf_status gpf_theta_compute(const gpf_rktable* table, uint64_t s, int64_t terms, gpf_theta** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    const auto gaps = gpfree::min_inverse(table->table);
    if (terms > static_cast<int64_t>(UINT32_MAX)) throw gpfree::InvalidArgument("terms out of range");
    auto approx = terms < 0 ? gpfree::theta_partial(s, gaps)
                            : gpfree::theta_partial(s, gaps, static_cast<std::uint32_t>(terms));
    auto t = new gpf_theta{approx, gpfree::to_fraction(approx.partial), gpfree::to_fraction(approx.tail_bound),
                           gpfree::to_fraction(approx.upper())};
    *out = t;
  });
}

void gpf_theta_free(gpf_theta* theta) { delete theta; }
uint32_t gpf_theta_terms(const gpf_theta* theta) { return theta ? theta->approx.terms : 0; }
int gpf_theta_finite(const gpf_theta* theta) { return theta && theta->approx.finite ? 1 : 0; }
const char* gpf_theta_partial(const gpf_theta* theta) { return theta ? theta->partial.c_str() : ""; }
const char* gpf_theta_tail(const gpf_theta* theta) { return theta ? theta->tail.c_str() : ""; }
const char* gpf_theta_upper(const gpf_theta* theta) { return theta ? theta->upper.c_str() : ""; }

gpf_status gpf_theta_digits(const gpf_rktable* table, uint64_t s, uint32_t len, uint32_t* digits) {
  return guarded([&] {
    require(table, "table");
    if (len) require(digits, "digits");
    const auto stream = gpfree::theta_digits(s, gpfree::min_inverse(table->table), len);
    std::copy(stream.digits.begin(), stream.digits.end(), digits);
  });
}

gpf_status gpf_rational_to_decimal(const char* fraction, unsigned digits, int rounding, char* buf, size_t cap,
                                   size_t* needed) {
  return guarded([&] {
    require(fraction, "fraction");
    gpfree::Rational q;
    if (q.set_str(fraction, 10) != 0) throw gpfree::InvalidArgument(std::string("not a rational: ") + fraction);
    if (q.get_den() == 0) throw gpfree::InvalidArgument("zero denominator");
    q.canonicalize();
    gpfree::Rounding mode = gpfree::Rounding::nearest;
    if (rounding == GPF_ROUND_DOWN) mode = gpfree::Rounding::down;
    if (rounding == GPF_ROUND_UP) mode = gpfree::Rounding::up;
    const std::string text = gpfree::to_decimal(q, digits, mode);
    if (needed) *needed = text.size();
    if (buf && cap > 0) {
      const size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

gpf_status gpf_convergence_compute(const gpf_rktable* table, uint64_t s, const uint64_t* n_list, size_t count,
                                   gpf_convergence** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    if (count) require(n_list, "n_list");
    const auto rows = gpfree::convergence_experiment(s, {n_list, count}, table->table);
    auto c = new gpf_convergence{};
    for (const auto& r : rows)
      c->rows.push_back({r.n, r.g,
                         {gpfree::to_fraction(r.ratio), gpfree::to_fraction(r.theta_lo),
                          gpfree::to_fraction(r.theta_hi), gpfree::to_fraction(r.deviation)}});
    *out = c;
  });
}

void gpf_convergence_free(gpf_convergence* conv) { delete conv; }
size_t gpf_convergence_rows(const gpf_convergence* conv) { return conv ? conv->rows.size() : 0; }
uint64_t gpf_convergence_n(const gpf_convergence* conv, size_t row) {
  return conv && row < conv->rows.size() ? conv->rows[row].n : 0;
}
uint64_t gpf_convergence_g(const gpf_convergence* conv, size_t row) {
  return conv && row < conv->rows.size() ? conv->rows[row].g : 0;
}
const char* gpf_convergence_field(const gpf_convergence* conv, size_t row, int field) {
  if (!conv || row >= conv->rows.size() || field < 0 || field > 3) return "";
  return conv->rows[row].fields[field].c_str();
}

gpf_status gpf_compare_compute(const gpf_rktable* table, uint64_t s, uint64_t s2, uint64_t n_max,
                               gpf_compare** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    *out = new gpf_compare{gpfree::monotonicity_experiment(table->table.k(), s, s2, n_max, table->table,
                                                           table->table)};
  });
}

void gpf_compare_free(gpf_compare* cmp) { delete cmp; }
size_t gpf_compare_rows(const gpf_compare* cmp) { return cmp ? cmp->report.rows.size() : 0; }

gpf_status gpf_compare_row(const gpf_compare* cmp, size_t row, uint64_t* n, uint64_t* g_s, uint64_t* g_s2) {
  return guarded([&] {
    require(cmp, "cmp");
    if (row >= cmp->report.rows.size()) throw gpfree::InvalidArgument("row index out of range");
    const auto& r = cmp->report.rows[row];
    if (n) *n = r.n;
    if (g_s) *g_s = r.g_s;
    if (g_s2) *g_s2 = r.g_s2;
  });
}

uint64_t gpf_compare_first_violation(const gpf_compare* cmp) {
  return cmp && cmp->report.first_violation ? *cmp->report.first_violation : 0;
}
uint64_t gpf_compare_first_strict(const gpf_compare* cmp) {
  return cmp && cmp->report.first_strict ? *cmp->report.first_strict : 0;
}

}  // extern "C"
