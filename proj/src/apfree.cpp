#include "gpfree/apfree.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace gpfree {

namespace {

void require_k(unsigned k) {
  if (k < 2) throw InvalidArgument("progression length k must be >= 2, got " + std::to_string(k));
}

class Bits {
 public:
  static constexpr std::size_t kWords = kMaxEll / 64;

  bool test(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::uint32_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  // Number of clear bits in [from, to).
  std::uint32_t count_clear(std::uint32_t from, std::uint32_t to) const {
    std::uint32_t set_bits = 0;
    for (std::uint32_t i = from; i < to;) {
      const std::uint32_t word = i >> 6;
      const std::uint32_t lo = i & 63;
      const std::uint32_t hi = std::min<std::uint32_t>(64, lo + (to - i));
      std::uint64_t mask = (hi - lo == 64) ? ~std::uint64_t{0}
                                           : (((std::uint64_t{1} << (hi - lo)) - 1) << lo);
      set_bits += static_cast<std::uint32_t>(std::popcount(w_[word] & mask));
      i += hi - lo;
    }
    return (to - from) - set_bits;
  }

 private:
  std::array<std::uint64_t, kWords> w_{};
};

// Depth-first branch and bound over 0..ell-1 in increasing order, including
// an element before excluding it. The first set of size `target` reached is
// therefore the lexicographically least one.
class TargetSearch {
 public:
  TargetSearch(unsigned k, std::uint32_t ell, std::span<const std::uint32_t> shorter,
               std::uint64_t& nodes, std::uint64_t max_nodes)
      : k_(k), ell_(ell), shorter_(shorter), nodes_(nodes), max_nodes_(max_nodes) {}

  struct Exhausted {};

  std::optional<std::vector<Element>> find(std::uint32_t target) {
    target_ = target;
    chosen_list_.clear();
    if (!dfs(0, Bits{}, Bits{})) return std::nullopt;
    return chosen_list_;
  }

 private:
  // r_k of an interval of the given length, from rows already settled.
  std::uint32_t interval_bound(std::uint32_t len) const {
    if (len == 0) return 0;
    if (len <= shorter_.size()) return shorter_[len - 1];
    return len;
  }

  // Marks every x > e that would become the top of a k-term AP whose other
  // terms are chosen, given that e was just chosen.
  void forbid_after(std::uint32_t e, const Bits& chosen, Bits& forbidden) const {
    const std::uint32_t inner = k_ - 2;
    for (std::uint32_t d = 1; e + d < ell_; ++d) {
      if (std::uint64_t{inner} * d > e) break;
      bool run = true;
      for (std::uint32_t j = 1; j <= inner && run; ++j) run = chosen.test(e - j * d);
      if (run) forbidden.set(e + d);
    }
  }

  bool dfs(std::uint32_t i, Bits chosen, Bits forbidden) {
    const auto count = static_cast<std::uint32_t>(chosen_list_.size());
    if (count == target_) return true;
    if (i == ell_) return false;
    if (++nodes_ > max_nodes_) throw Exhausted{};

    // Only the span between the first and last still-allowed positions can
    // contribute, and an interval of length L holds at most r_k(L).
    const std::uint32_t free = forbidden.count_clear(i, ell_);
    if (count + free < target_) return false;
    std::uint32_t lo = i;
    while (forbidden.test(lo)) ++lo;
    std::uint32_t hi = ell_ - 1;
    while (forbidden.test(hi)) --hi;
    if (count + interval_bound(hi - lo + 1) < target_) return false;
    // The whole set also lies in [first chosen, hi].
    const std::uint32_t first = count ? chosen_list_.front() : lo;
    if (interval_bound(hi - first + 1) < target_) return false;

    if (!forbidden.test(i)) {
      Bits next_chosen = chosen;
      next_chosen.set(i);
      Bits next_forbidden = forbidden;
      forbid_after(i, next_chosen, next_forbidden);
      chosen_list_.push_back(i);
      if (dfs(i + 1, next_chosen, next_forbidden)) return true;
      chosen_list_.pop_back();
    }
    return dfs(i + 1, chosen, forbidden);
  }

  unsigned k_;
  std::uint32_t ell_;
  std::span<const std::uint32_t> shorter_;
  std::uint64_t& nodes_;
  std::uint64_t max_nodes_;
  std::uint32_t target_ = 0;
  std::vector<Element> chosen_list_;
};

}  // namespace

RkTable::RkTable(unsigned k, std::vector<std::uint32_t> values,
                 std::vector<std::vector<Element>> witnesses)
    : k_(k), values_(std::move(values)), witnesses_(std::move(witnesses)) {
  require_k(k_);
  if (values_.empty()) throw InvalidArgument("r_k table must have at least one row");
  if (values_.size() != witnesses_.size())
    throw InvalidArgument("r_k table has " + std::to_string(values_.size()) + " values but " +
                          std::to_string(witnesses_.size()) + " witnesses");
  if (values_.size() > kMaxEll)
    throw InvalidArgument("r_k table longer than supported ell_max " + std::to_string(kMaxEll));
  if (values_[0] != 1) throw InvalidArgument("r_k(1) must be 1");

  for (std::uint32_t ell = 1; ell <= values_.size(); ++ell) {
    const std::uint32_t v = values_[ell - 1];
    const std::string where = "r_" + std::to_string(k_) + "(" + std::to_string(ell) + ")";
    if (ell > 1) {
      const std::uint32_t prev = values_[ell - 2];
      if (v != prev && v != prev + 1) throw InvalidArgument(where + " does not step by 0 or 1");
    }
    if (ell < k_ && v != ell) throw InvalidArgument(where + " must equal ell below k");
    if (ell == k_ && v != k_ - 1) throw InvalidArgument(where + " must equal k-1");

    const auto& w = witnesses_[ell - 1];
    if (w.size() != v) throw InvalidArgument("witness for " + where + " has wrong size");
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] >= ell) throw InvalidArgument("witness for " + where + " leaves the ground set");
      if (i > 0 && w[i] <= w[i - 1]) throw InvalidArgument("witness for " + where + " is not sorted");
    }
    if (has_k_term_ap(w, k_)) throw InvalidArgument("witness for " + where + " contains a k-term AP");
  }
}

std::uint32_t RkTable::value(std::uint32_t ell) const {
  if (!covers(ell)) throw TableInsufficient(ell, ell_max());
  return values_[ell - 1];
}

std::span<const Element> RkTable::witness(std::uint32_t ell) const {
  if (!covers(ell)) throw TableInsufficient(ell, ell_max());
  return witnesses_[ell - 1];
}

RkTable RkTable::prefix(std::uint32_t ell_max) const {
  if (!covers(ell_max)) throw TableInsufficient(ell_max, this->ell_max());
  return RkTable(k_, {values_.begin(), values_.begin() + ell_max},
                 {witnesses_.begin(), witnesses_.begin() + ell_max});
}

BudgetExhausted::BudgetExhausted(std::uint32_t ell, std::uint32_t lower_bound,
                                 std::optional<RkTable> verified)
    : Error(Errc::budget_exhausted,
            "budget-exhausted: r_k(" + std::to_string(ell) + ") unresolved, best bound " +
                std::to_string(lower_bound) + " <= r_k <= " + std::to_string(lower_bound + 1) +
                "; verified through ell = " +
                std::to_string(verified ? verified->ell_max() : 0)),
      ell_(ell), lower_bound_(lower_bound), verified_(std::move(verified)) {}

std::vector<std::uint32_t> GapSequence::gaps() const {
  std::vector<std::uint32_t> out;
  for (std::size_t m = 1; m < u.size(); ++m) out.push_back(u[m] - u[m - 1]);
  return out;
}

bool has_k_term_ap(std::span<const Element> set, unsigned k) {
  require_k(k);
  std::vector<Element> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < k) return false;
  if (k == 2) return true;

  const auto contains = [&](std::uint64_t x) {
    return x <= sorted.back() && std::binary_search(sorted.begin(), sorted.end(), static_cast<Element>(x));
  };
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      const std::uint64_t d = sorted[b] - sorted[a];
      if (sorted[a] + std::uint64_t{k - 1} * d > sorted.back()) break;
      bool all = true;
      for (unsigned j = 2; j < k && all; ++j) all = contains(sorted[a] + j * d);
      if (all) return true;
    }
  }
  return false;
}

std::uint32_t rk_bruteforce_oracle(unsigned k, std::uint32_t ell, std::uint32_t cap) {
  require_k(k);
  if (ell < 1) throw InvalidArgument("ell must be >= 1");
  if (ell > cap || ell > 40) throw OracleCapExceeded(ell, std::min<std::uint32_t>(cap, 40));

  std::uint32_t best = 0;
  const std::uint64_t limit = std::uint64_t{1} << ell;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    const auto size = static_cast<std::uint32_t>(std::popcount(mask));
    if (size <= best) continue;
    bool progression = false;
    for (std::uint32_t d = 1; std::uint64_t{k - 1} * d < ell && !progression; ++d) {
      std::uint64_t starts = mask;
      for (unsigned j = 1; j < k; ++j) starts &= mask >> (j * d);
      progression = starts != 0;
    }
    if (!progression) best = size;
  }
  return best;
}

RkTable extend_table(const RkTable& base, std::uint32_t ell_max, SearchBudget budget) {
  if (ell_max <= base.ell_max()) return base;
  if (ell_max > kMaxEll)
    throw InvalidArgument("ell_max " + std::to_string(ell_max) + " exceeds supported maximum " +
                          std::to_string(kMaxEll));

  const unsigned k = base.k();
  std::vector<std::uint32_t> values(base.values().begin(), base.values().end());
  std::vector<std::vector<Element>> witnesses;
  for (std::uint32_t ell = 1; ell <= base.ell_max(); ++ell) {
    auto w = base.witness(ell);
    witnesses.emplace_back(w.begin(), w.end());
  }

  std::uint64_t nodes = 0;
  for (std::uint32_t ell = base.ell_max() + 1; ell <= ell_max; ++ell) {
    const std::uint32_t prev = values.back();
    TargetSearch search(k, ell, values, nodes, budget.max_nodes);
    try {
      // Fast path: the previous witness plus the new top element certifies
      // the step without any search.
      std::vector<Element> grown = witnesses.back();
      grown.push_back(ell - 1);
      const bool step_certified = !has_k_term_ap(grown, k);

      auto bigger = search.find(prev + 1);
      if (step_certified && !bigger)
        throw std::logic_error("search missed a certified extension at ell = " + std::to_string(ell));
      if (bigger) {
        values.push_back(prev + 1);
        witnesses.push_back(std::move(*bigger));
      } else {
        auto same = search.find(prev);
        values.push_back(prev);
        witnesses.push_back(std::move(*same));
      }
    } catch (const TargetSearch::Exhausted&) {
      throw BudgetExhausted(ell, prev, RkTable(k, std::move(values), std::move(witnesses)));
    }
  }
  return RkTable(k, std::move(values), std::move(witnesses));
}

RkTable rk_table(unsigned k, std::uint32_t ell_max, SearchBudget budget) {
  require_k(k);
  if (ell_max < 1) throw InvalidArgument("ell_max must be >= 1");
  return extend_table(RkTable(k, {1}, {{0}}), ell_max, budget);
}

RkResult rk_exact(unsigned k, std::uint32_t ell, SearchBudget budget) {
  const RkTable table = rk_table(k, ell, budget);
  auto w = table.witness(ell);
  return {table.value(ell), {w.begin(), w.end()}};
}

GapSequence min_inverse(const RkTable& table) {
  GapSequence out{table.k(), table.ell_max(), {}};
  std::uint32_t reached = 0;
  for (std::uint32_t ell = 1; ell <= table.ell_max(); ++ell) {
    if (table.value(ell) > reached) {
      reached = table.value(ell);
      out.u.push_back(ell);
    }
  }
  return out;
}

}  // namespace gpfree
