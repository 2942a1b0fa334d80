/* C interface to libgpfree.
 *
 * Objects are opaque handles created by gpf_*_compute / load functions and
 * released with the matching gpf_*_free. Every fallible call returns a
 * gpf_status; on failure gpf_last_error() describes it (per thread).
 * Strings returned as const char* are owned by the handle they came from.
 * Array getters copy at most `cap` items and return the total count, so a
 * call with cap = 0 sizes the buffer.
 */
#ifndef GPFREE_GPFREE_H
#define GPFREE_GPFREE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define GPF_API __declspec(dllexport)
#else
#  define GPF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gpf_status {
  GPF_OK = 0,
  GPF_ERR_INVALID_ARGUMENT = 1,
  GPF_ERR_BUDGET_EXHAUSTED = 2,
  GPF_ERR_TABLE_INSUFFICIENT = 3,
  GPF_ERR_OVERFLOW = 4,
  GPF_ERR_ORACLE_CAP = 5,
  GPF_ERR_IO = 6,
  GPF_ERR_CORRUPT_CACHE = 7,
  GPF_ERR_VERSION_MISMATCH = 8,
  GPF_ERR_WOULD_TRUNCATE = 9,
  GPF_ERR_NOT_FOUND = 10,
  GPF_ERR_INTERNAL = 99
} gpf_status;

GPF_API const char* gpf_status_name(gpf_status status);
GPF_API const char* gpf_last_error(void);
/* Numeric payload of the last error: the required ell_max for
 * GPF_ERR_TABLE_INSUFFICIENT, the certified lower bound for
 * GPF_ERR_BUDGET_EXHAUSTED, the cap for GPF_ERR_ORACLE_CAP; 0 otherwise. */
GPF_API uint64_t gpf_last_error_detail(void);

/* ---- r_k tables ---------------------------------------------------------- */

typedef struct gpf_rktable gpf_rktable;

/* node_budget = 0 selects the library default. On GPF_ERR_BUDGET_EXHAUSTED,
 * *out receives the verified prefix (or NULL when nothing was verified). */
GPF_API gpf_status gpf_rktable_compute(unsigned k, uint32_t ell_max, uint64_t node_budget, gpf_rktable** out);
GPF_API gpf_status gpf_rktable_extend(const gpf_rktable* base, uint32_t ell_max, uint64_t node_budget,
                                      gpf_rktable** out);
GPF_API gpf_status gpf_rktable_load(const char* path, gpf_rktable** out);
GPF_API gpf_status gpf_rktable_save(const gpf_rktable* table, const char* path);
/* dir = NULL uses the default cache directory (GPFREE_CACHE_DIR honored).
 * Same out-parameter rule as gpf_rktable_compute. */
GPF_API gpf_status gpf_cache_ensure(const char* dir, unsigned k, uint32_t ell_max, uint64_t node_budget,
                                    gpf_rktable** out);
/* Writes the default cache directory; returns its full length. */
GPF_API size_t gpf_cache_default_dir(char* buf, size_t cap);
GPF_API void gpf_rktable_free(gpf_rktable* table);

GPF_API unsigned gpf_rktable_k(const gpf_rktable* table);
GPF_API uint32_t gpf_rktable_ell_max(const gpf_rktable* table);
/* 0 when ell is outside 1..ell_max. */
GPF_API uint32_t gpf_rktable_value(const gpf_rktable* table, uint32_t ell);
GPF_API size_t gpf_rktable_witness(const gpf_rktable* table, uint32_t ell, uint32_t* buf, size_t cap);

GPF_API gpf_status gpf_has_k_term_ap(const uint32_t* set, size_t count, unsigned k, int* out);
GPF_API gpf_status gpf_rk_oracle(unsigned k, uint32_t ell, uint32_t cap, uint32_t* out);

/* ---- u_m and its gaps ---------------------------------------------------- */

typedef struct gpf_gaps gpf_gaps;

GPF_API gpf_status gpf_gaps_compute(const gpf_rktable* table, gpf_gaps** out);
GPF_API void gpf_gaps_free(gpf_gaps* gaps);
GPF_API size_t gpf_gaps_u(const gpf_gaps* gaps, uint32_t* buf, size_t cap);
/* diffs[i] = u_{i+2} - u_{i+1}; running_max parallel to diffs. */
GPF_API size_t gpf_gaps_diffs(const gpf_gaps* gaps, uint32_t* buf, size_t cap);
GPF_API size_t gpf_gaps_running_max(const gpf_gaps* gaps, uint32_t* buf, size_t cap);
/* Indices m (1-based, into diffs) at which the running maximum grows. */
GPF_API size_t gpf_gaps_records(const gpf_gaps* gaps, uint32_t* buf, size_t cap);

/* ---- g_k^(s)(n) ---------------------------------------------------------- */

enum {
  GPF_G_PER_CHAIN = 1, /* per-root breakdown; n <= 10^5 only */
  GPF_G_WITNESS = 2    /* extremal subset; n <= 10^7 only */
};

typedef struct gpf_gresult gpf_gresult;

GPF_API gpf_status gpf_g_compute(const gpf_rktable* table, uint64_t s, uint64_t n, int flags,
                                 gpf_gresult** out);
GPF_API void gpf_gresult_free(gpf_gresult* result);
GPF_API uint64_t gpf_gresult_value(const gpf_gresult* result);
GPF_API size_t gpf_gresult_group_count(const gpf_gresult* result);
GPF_API gpf_status gpf_gresult_group(const gpf_gresult* result, size_t i, uint32_t* length, uint64_t* roots,
                                     uint32_t* r);
GPF_API size_t gpf_gresult_chain_count(const gpf_gresult* result);
GPF_API gpf_status gpf_gresult_chain(const gpf_gresult* result, size_t i, uint64_t* root, uint32_t* length,
                                     uint32_t* r);
GPF_API size_t gpf_gresult_witness(const gpf_gresult* result, uint64_t* buf, size_t cap);

GPF_API gpf_status gpf_required_ell_max(uint64_t s, uint64_t n, uint32_t* out);
GPF_API gpf_status gpf_has_k_term_gp(const uint64_t* set, size_t count, unsigned k, uint64_t s, int* out);
GPF_API gpf_status gpf_g_bruteforce(unsigned k, uint64_t s, uint32_t n, uint32_t cap, uint64_t* out);
GPF_API gpf_status gpf_g_multi_bruteforce(unsigned k, const uint64_t* ratios, size_t ratio_count, uint32_t n,
                                          uint32_t cap, uint64_t* out);

/* ---- theta --------------------------------------------------------------- */

typedef struct gpf_theta gpf_theta;

/* terms < 0 sums every known term. Rationals come back as "p/q" strings. */
GPF_API gpf_status gpf_theta_compute(const gpf_rktable* table, uint64_t s, int64_t terms, gpf_theta** out);
GPF_API void gpf_theta_free(gpf_theta* theta);
GPF_API uint32_t gpf_theta_terms(const gpf_theta* theta);
GPF_API int gpf_theta_finite(const gpf_theta* theta);
GPF_API const char* gpf_theta_partial(const gpf_theta* theta);
GPF_API const char* gpf_theta_tail(const gpf_theta* theta);
GPF_API const char* gpf_theta_upper(const gpf_theta* theta);

/* Digit at position ell (1..len) of theta in base s: 0 or s-1. */
GPF_API gpf_status gpf_theta_digits(const gpf_rktable* table, uint64_t s, uint32_t len, uint32_t* digits);

enum { GPF_ROUND_DOWN = 0, GPF_ROUND_UP = 1, GPF_ROUND_NEAREST = 2 };

/* Renders a "p/q" (or integer) string with `digits` fractional digits.
 * Writes a NUL-terminated string when it fits; returns the needed length
 * (excluding NUL) via *needed. */
GPF_API gpf_status gpf_rational_to_decimal(const char* fraction, unsigned digits, int rounding, char* buf,
                                           size_t cap, size_t* needed);

/* ---- experiments --------------------------------------------------------- */

typedef struct gpf_convergence gpf_convergence;

GPF_API gpf_status gpf_convergence_compute(const gpf_rktable* table, uint64_t s, const uint64_t* n_list,
                                           size_t count, gpf_convergence** out);
GPF_API void gpf_convergence_free(gpf_convergence* conv);
GPF_API size_t gpf_convergence_rows(const gpf_convergence* conv);
GPF_API uint64_t gpf_convergence_n(const gpf_convergence* conv, size_t row);
GPF_API uint64_t gpf_convergence_g(const gpf_convergence* conv, size_t row);
/* field: 0 = g/n, 1 = theta_lo, 2 = theta_hi, 3 = deviation from midpoint. */
GPF_API const char* gpf_convergence_field(const gpf_convergence* conv, size_t row, int field);

typedef struct gpf_compare gpf_compare;

GPF_API gpf_status gpf_compare_compute(const gpf_rktable* table, uint64_t s, uint64_t s2, uint64_t n_max,
                                       gpf_compare** out);
GPF_API void gpf_compare_free(gpf_compare* cmp);
GPF_API size_t gpf_compare_rows(const gpf_compare* cmp);
GPF_API gpf_status gpf_compare_row(const gpf_compare* cmp, size_t row, uint64_t* n, uint64_t* g_s,
                                   uint64_t* g_s2);
/* 0 when there is none. */
GPF_API uint64_t gpf_compare_first_violation(const gpf_compare* cmp);
GPF_API uint64_t gpf_compare_first_strict(const gpf_compare* cmp);

#ifdef __cplusplus
}
#endif

#endif
