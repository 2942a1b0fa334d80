#include "gpfree/geoprog.hpp"

#include <algorithm>
#include <string>

#include "gpfree/constant.hpp"

namespace gpfree {

namespace {

void require_base(Natural s) {
  if (s < 2) throw InvalidArgument("ratio base s must be >= 2, got " + std::to_string(s));
}

void require_k(unsigned k) {
  if (k < 2) throw InvalidArgument("progression length k must be >= 2, got " + std::to_string(k));
}

// a * b, or nullopt on wraparound.
std::optional<Natural> checked_mul(Natural a, Natural b) {
  Natural out;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

std::optional<Natural> checked_pow(Natural base, unsigned e) {
  Natural out = 1;
  for (unsigned i = 0; i < e; ++i) {
    auto next = checked_mul(out, base);
    if (!next) return std::nullopt;
    out = *next;
  }
  return out;
}

void require_table(unsigned k, Natural s, Natural n, const RkTable& table) {
  require_k(k);
  require_base(s);
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (table.k() != k)
    throw InvalidArgument("table is for k = " + std::to_string(table.k()) + ", requested k = " +
                          std::to_string(k));
  const std::uint32_t need = required_ell_max(s, n);
  if (!table.covers(need)) throw TableInsufficient(need, table.ell_max());
}

// Chosen elements of {1..n}, n <= 63.
class GpFreeSearch {
 public:
  GpFreeSearch(unsigned k, std::span<const Natural> ratios, std::uint32_t n)
      : k_(k), ratios_(ratios), n_(n) {}

  Natural run() {
    dfs(1, 0);
    return best_;
  }

 private:
  bool chosen(Natural x) const { return (chosen_ >> x) & 1u; }

  // Would x be the largest term of a forbidden progression?
  bool completes(Natural x) const {
    for (Natural s : ratios_) {
      for (Natural q = s;;) {
        const auto span = checked_pow(q, k_ - 1);
        if (!span || *span > x) break;
        if (x % *span == 0) {
          bool all = true;
          Natural y = x;
          for (unsigned j = 1; j < k_ && all; ++j) {
            y /= q;
            all = chosen(y);
          }
          if (all) return true;
        }
        const auto next = checked_mul(q, s);
        if (!next || *next > x) break;
        q = *next;
      }
    }
    return false;
  }

  void dfs(Natural x, Natural count) {
    if (x > n_) {
      best_ = std::max(best_, count);
      return;
    }
    if (count + (n_ - x + 1) <= best_) return;
    if (!completes(x)) {
      chosen_ |= std::uint64_t{1} << x;
      dfs(x + 1, count + 1);
      chosen_ &= ~(std::uint64_t{1} << x);
    }
    dfs(x + 1, count);
  }

  unsigned k_;
  std::span<const Natural> ratios_;
  Natural n_;
  std::uint64_t chosen_ = 0;
  Natural best_ = 0;
};

}  // namespace

std::uint32_t ilog(Natural s, Natural n, Natural b) {
  require_base(s);
  if (b < 1 || b > n)
    throw InvalidArgument("ilog needs 1 <= b <= n, got b = " + std::to_string(b) +
                          ", n = " + std::to_string(n));
  std::uint32_t i = 0;
  while (b <= n / s) {
    b *= s;
    ++i;
  }
  return i;
}

std::uint32_t required_ell_max(Natural s, Natural n) { return 1 + ilog(s, n, 1); }

Natural ChainPartition::total() const {
  Natural sum = 0;
  for (auto len : chain_lengths) sum += len;
  return sum;
}

ChainPartition chain_partition(Natural n, Natural s) {
  require_base(s);
  if (n < 1) throw InvalidArgument("n must be >= 1");
  ChainPartition out{n, s, {}, {}};
  for (Natural b = 1; b <= n; ++b) {
    if (b % s == 0) continue;
    out.roots.push_back(b);
    out.chain_lengths.push_back(1 + ilog(s, n, b));
  }
  return out;
}

GResult g_formula(unsigned k, Natural s, Natural n, const RkTable& table, GMethod method) {
  require_table(k, s, n, table);
  const std::uint32_t depth = required_ell_max(s, n);
  if (method == GMethod::automatic)
    method = n <= kDirectIterationLimit ? GMethod::direct : GMethod::grouped;

  GResult out;
  out.k = k;
  out.s = s;
  out.n = n;
  std::vector<Natural> roots_by_length(depth + 1, 0);

  if (method == GMethod::direct) {
    std::vector<ChainContribution> chains;
    for (Natural b = 1; b <= n; ++b) {
      if (b % s == 0) continue;
      const std::uint32_t len = 1 + ilog(s, n, b);
      chains.push_back({b, len, table.value(len)});
      ++roots_by_length[len];
    }
    out.per_chain = std::move(chains);
  } else {
    // Roots with chain length ell are exactly the b in (n/s^ell, n/s^(ell-1)].
    Rational upper(to_integer(n));
    for (std::uint32_t ell = 1; ell <= depth; ++ell) {
      Rational lower = upper / to_integer(s);
      roots_by_length[ell] = to_natural(count_nondivisible(lower, upper, s));
      upper = lower;
    }
  }

  for (std::uint32_t ell = 1; ell <= depth; ++ell) {
    if (roots_by_length[ell] == 0) continue;
    const std::uint32_t r = table.value(ell);
    out.per_length.push_back({ell, roots_by_length[ell], r});
    out.value += roots_by_length[ell] * r;
  }
  return out;
}

bool has_k_term_gp(std::span<const Natural> set, unsigned k, Natural s) {
  require_k(k);
  require_base(s);
  std::vector<Natural> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (!sorted.empty() && sorted.front() == 0) throw InvalidArgument("GP elements must be positive");
  if (sorted.size() < k) return false;

  const Natural top = sorted.back();
  const auto contains = [&](Natural x) { return std::binary_search(sorted.begin(), sorted.end(), x); };
  for (Natural a : sorted) {
    for (Natural q = s;;) {
      const auto span = checked_pow(q, k - 1);
      if (!span) break;
      const auto last = checked_mul(a, *span);
      if (!last || *last > top) break;
      bool all = true;
      Natural term = a;
      for (unsigned j = 1; j < k && all; ++j) {
        term *= q;
        all = contains(term);
      }
      if (all) return true;
      const auto next = checked_mul(q, s);
      if (!next) break;
      q = *next;
    }
  }
  return false;
}

Natural g_multi_ratio_bruteforce(unsigned k, std::span<const Natural> ratios, std::uint32_t n,
                                 std::uint32_t cap) {
  require_k(k);
  if (ratios.empty()) throw InvalidArgument("ratio set must not be empty");
  for (Natural s : ratios) require_base(s);
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (n > cap || n > 63) throw OracleCapExceeded(n, std::min<std::uint32_t>(cap, 63));
  return GpFreeSearch(k, ratios, n).run();
}

Natural g_bruteforce(unsigned k, Natural s, std::uint32_t n, std::uint32_t cap) {
  const Natural ratios[] = {s};
  return g_multi_ratio_bruteforce(k, ratios, n, cap);
}

std::vector<Natural> g_witness(unsigned k, Natural s, Natural n, const RkTable& table) {
  require_table(k, s, n, table);
  if (n > kMaxWitnessN)
    throw InvalidArgument("witness for n = " + std::to_string(n) + " is too large to materialize (limit " +
                          std::to_string(kMaxWitnessN) + ")");
  std::vector<Natural> out;
  for (Natural b = 1; b <= n; ++b) {
    if (b % s == 0) continue;
    const std::uint32_t len = 1 + ilog(s, n, b);
    Natural power = 1;
    std::uint32_t exponent = 0;
    for (Element e : table.witness(len)) {
      for (; exponent < e; ++exponent) power *= s;
      out.push_back(b * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MonotonicityReport monotonicity_experiment(unsigned k, Natural s, Natural s2, Natural n_max,
                                           const RkTable& table_s, const RkTable& table_s2) {
  require_base(s);
  if (s2 <= s) throw InvalidArgument("need 2 <= s < s', got s = " + std::to_string(s) +
                                     ", s' = " + std::to_string(s2));
  MonotonicityReport out{k, s, s2, {}, std::nullopt, std::nullopt};
  for (Natural n = 1; n <= n_max; ++n) {
    const Natural a = g_formula(k, s, n, table_s, GMethod::grouped).value;
    const Natural b = g_formula(k, s2, n, table_s2, GMethod::grouped).value;
    const Comparison cmp = b < a ? Comparison::less : (b == a ? Comparison::equal : Comparison::greater);
    out.rows.push_back({n, a, b, cmp});
    if (cmp == Comparison::greater && !out.first_violation) out.first_violation = n;
    if (cmp == Comparison::less && !out.first_strict) out.first_strict = n;
  }
  return out;
}

}  // namespace gpfree
