// gpfree: command-line front end over the libgpfree C API.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gpfree/gpfree.h"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using TablePtr = std::unique_ptr<gpf_rktable, Deleter<gpf_rktable, gpf_rktable_free>>;
using GapsPtr = std::unique_ptr<gpf_gaps, Deleter<gpf_gaps, gpf_gaps_free>>;
using GResultPtr = std::unique_ptr<gpf_gresult, Deleter<gpf_gresult, gpf_gresult_free>>;
using ThetaPtr = std::unique_ptr<gpf_theta, Deleter<gpf_theta, gpf_theta_free>>;
using ConvPtr = std::unique_ptr<gpf_convergence, Deleter<gpf_convergence, gpf_convergence_free>>;
using ComparePtr = std::unique_ptr<gpf_compare, Deleter<gpf_compare, gpf_compare_free>>;

// Raised with the library status that ends the command.
struct Failure {
  gpf_status status;
  std::string message;
};

void check(gpf_status st) {
  if (st != GPF_OK) throw Failure{st, std::string(gpf_status_name(st)) + ": " + gpf_last_error()};
}

struct Common {
  std::string format = "table";
  std::string output;
  std::string cache;
  bool no_cache = false;
  unsigned precision = 12;
  std::uint64_t budget = 0;
};

// Summary fields plus an optional row set; rendered as text, CSV or JSON.
struct Doc {
  std::vector<std::pair<std::string, json>> fields;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string plain(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + plain(v[i]);
    return out;
  }
  if (v.is_null()) return "none";
  return v.dump();
}

std::string csv_cell(const json& v) {
  std::string s = plain(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void render(const Doc& doc, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json j = json::object();
    for (const auto& [k, v] : doc.fields) j[k] = v;
    if (!doc.columns.empty()) {
      json rows = json::array();
      for (const auto& row : doc.rows) {
        json r = json::object();
        for (std::size_t i = 0; i < doc.columns.size(); ++i) r[doc.columns[i]] = row[i];
        rows.push_back(std::move(r));
      }
      j["rows"] = std::move(rows);
    }
    out << j.dump(2) << '\n';
  } else if (format == "csv") {
    if (doc.columns.empty()) {
      out << "field,value\n";
      for (const auto& [k, v] : doc.fields) out << k << ',' << csv_cell(v) << '\n';
      return;
    }
    for (std::size_t i = 0; i < doc.columns.size(); ++i) out << (i ? "," : "") << doc.columns[i];
    out << '\n';
    for (const auto& row : doc.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << '\n';
    }
  } else {
    for (const auto& [k, v] : doc.fields) out << k << ": " << plain(v) << '\n';
    if (doc.columns.empty()) return;
    for (std::size_t i = 0; i < doc.columns.size(); ++i) out << (i ? " " : "") << doc.columns[i];
    out << '\n';
    for (const auto& row : doc.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << plain(row[i]);
      out << '\n';
    }
  }
}

void emit(const Doc& doc, const Common& c) {
  if (c.output.empty()) {
    render(doc, c.format, std::cout);
    return;
  }
  std::ofstream f(c.output, std::ios::binary | std::ios::trunc);
  if (!f) throw Failure{GPF_ERR_IO, "io: cannot open " + c.output + " for writing"};
  render(doc, c.format, f);
}

std::uint64_t parse_natural(const std::string& text, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc::result_out_of_range)
    throw Failure{GPF_ERR_OVERFLOW, std::string("overflow: ") + what + " = " + text +
                                        " exceeds the 64-bit range (max 18446744073709551615); refused"};
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw Failure{GPF_ERR_INVALID_ARGUMENT, std::string("invalid-argument: ") + what + " = '" + text +
                                                "' is not a nonnegative integer"};
  return v;
}

std::vector<std::uint64_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_natural(item, what));
  if (out.empty()) throw Failure{GPF_ERR_INVALID_ARGUMENT, std::string("invalid-argument: empty ") + what};
  return out;
}

std::string decimal(const std::string& fraction, unsigned digits, int rounding) {
  std::size_t needed = 0;
  check(gpf_rational_to_decimal(fraction.c_str(), digits, rounding, nullptr, 0, &needed));
  std::string out(needed + 1, '\0');
  check(gpf_rational_to_decimal(fraction.c_str(), digits, rounding, out.data(), out.size(), &needed));
  out.resize(needed);
  return out;
}

std::vector<std::uint32_t> witness_of(const gpf_rktable* t, std::uint32_t ell) {
  std::vector<std::uint32_t> w(gpf_rktable_witness(t, ell, nullptr, 0));
  gpf_rktable_witness(t, ell, w.data(), w.size());
  return w;
}

json join(const std::vector<std::uint32_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

// Builds or loads r_k(1..lmax). On budget exhaustion `partial` (when given)
// receives the verified prefix before the failure propagates.
TablePtr acquire_table(const Common& c, unsigned k, std::uint32_t lmax, TablePtr* partial = nullptr) {
  gpf_rktable* raw = nullptr;
  const gpf_status st = c.no_cache ? gpf_rktable_compute(k, lmax, c.budget, &raw)
                                   : gpf_cache_ensure(c.cache.empty() ? nullptr : c.cache.c_str(), k, lmax,
                                                      c.budget, &raw);
  TablePtr table(raw);
  if (st != GPF_OK) {
    const std::string message = std::string(gpf_status_name(st)) + ": " + gpf_last_error();
    if (partial) *partial = std::move(table);
    throw Failure{st, message};
  }
  return table;
}

std::uint32_t table_depth(std::uint64_t s, std::uint64_t n) {
  std::uint32_t depth = 0;
  check(gpf_required_ell_max(s, n, &depth));
  return depth;
}

void add_rk_rows(Doc& doc, const gpf_rktable* t, std::uint32_t upto) {
  doc.columns = {"ell", "r", "witness"};
  for (std::uint32_t ell = 1; ell <= upto; ++ell)
    doc.rows.push_back({ell, gpf_rktable_value(t, ell), join(witness_of(t, ell))});
}

int cmd_rk(const Common& c, unsigned k, std::uint32_t lmax) {
  TablePtr partial;
  try {
    TablePtr t = acquire_table(c, k, lmax, &partial);
    Doc doc;
    add_rk_rows(doc, t.get(), lmax);
    emit(doc, c);
    return 0;
  } catch (const Failure& f) {
    if (f.status == GPF_ERR_BUDGET_EXHAUSTED && partial) {
      Doc doc;
      doc.fields.push_back({"verified_through", gpf_rktable_ell_max(partial.get())});
      add_rk_rows(doc, partial.get(), gpf_rktable_ell_max(partial.get()));
      emit(doc, c);
    }
    throw;
  }
}

int cmd_g(const Common& c, unsigned k, std::uint64_t s, std::uint64_t n, bool with_witness, bool chains,
          bool by_length) {
  TablePtr t = acquire_table(c, k, table_depth(s, n));
  gpf_gresult* raw = nullptr;
  const int flags = (with_witness ? GPF_G_WITNESS : 0) | (chains ? GPF_G_PER_CHAIN : 0);
  check(gpf_g_compute(t.get(), s, n, flags, &raw));
  GResultPtr r(raw);

  Doc doc;
  doc.fields = {{"k", k}, {"s", s}, {"n", n}, {"g", gpf_gresult_value(r.get())}};
  if (with_witness) {
    std::vector<std::uint64_t> w(gpf_gresult_witness(r.get(), nullptr, 0));
    gpf_gresult_witness(r.get(), w.data(), w.size());
    std::string text;
    for (std::size_t i = 0; i < w.size(); ++i) text += (i ? "," : "") + std::to_string(w[i]);
    doc.fields.push_back({"witness", text});
  }
  if (chains) {
    doc.columns = {"root", "length", "r"};
    for (std::size_t i = 0; i < gpf_gresult_chain_count(r.get()); ++i) {
      std::uint64_t root = 0;
      std::uint32_t len = 0, rv = 0;
      check(gpf_gresult_chain(r.get(), i, &root, &len, &rv));
      doc.rows.push_back({root, len, rv});
    }
  } else if (by_length) {
    doc.columns = {"length", "roots", "r", "contribution"};
    for (std::size_t i = 0; i < gpf_gresult_group_count(r.get()); ++i) {
      std::uint32_t len = 0, rv = 0;
      std::uint64_t roots = 0;
      check(gpf_gresult_group(r.get(), i, &len, &roots, &rv));
      doc.rows.push_back({len, roots, rv, roots * rv});
    }
  }
  emit(doc, c);
  return 0;
}

std::string digit_string(const std::vector<std::uint32_t>& digits, std::uint64_t s) {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (s > 10 && i) out += ',';
    out += std::to_string(digits[i]);
  }
  return out;
}

std::vector<std::uint32_t> digits_of(const gpf_rktable* t, std::uint64_t s, std::uint32_t len) {
  std::vector<std::uint32_t> d(len);
  check(gpf_theta_digits(t, s, len, d.data()));
  return d;
}

std::size_t known_terms(const gpf_rktable* t) {
  gpf_gaps* raw = nullptr;
  check(gpf_gaps_compute(t, &raw));
  GapsPtr g(raw);
  return gpf_gaps_u(g.get(), nullptr, 0);
}

int cmd_theta(const Common& c, unsigned k, std::uint64_t s, std::optional<std::uint64_t> terms,
              std::optional<std::uint32_t> digits_len, std::uint32_t lmax) {
  TablePtr t = acquire_table(c, k, lmax);
  if (k != 2 && terms && *terms > known_terms(t.get())) {
    const auto have = known_terms(t.get());
    throw Failure{GPF_ERR_TABLE_INSUFFICIENT,
                  "table-insufficient: r_" + std::to_string(k) + " table to ell = " + std::to_string(lmax) +
                      " yields " + std::to_string(have) + " terms; " + std::to_string(*terms) +
                      " requested. Rerun with a larger --lmax (u_m >= m, so at least --lmax " +
                      std::to_string(std::max<std::uint64_t>(*terms, lmax + 1)) + ")"};
  }
  gpf_theta* raw = nullptr;
  check(gpf_theta_compute(t.get(), s, terms ? static_cast<std::int64_t>(*terms) : -1, &raw));
  ThetaPtr th(raw);

  const std::string partial = gpf_theta_partial(th.get());
  const std::string tail = gpf_theta_tail(th.get());
  const std::string upper = gpf_theta_upper(th.get());
  const bool finite = gpf_theta_finite(th.get()) != 0;

  Doc doc;
  doc.fields = {{"k", k}, {"s", s}, {"terms", gpf_theta_terms(th.get())}, {"partial", partial},
                {"tail_bound", tail}, {"upper", upper}};
  doc.fields.push_back({"enclosure", decimal(partial, c.precision, GPF_ROUND_DOWN) + " ≤ θ ≤ " +
                                         decimal(upper, c.precision, GPF_ROUND_UP)});
  doc.fields.push_back({"finite", finite});
  if (finite) doc.fields.push_back({"note", "finite series: value is exact"});
  const std::uint32_t len = digits_len.value_or(lmax);
  if (len > lmax && k != 2)
    throw Failure{GPF_ERR_TABLE_INSUFFICIENT, "table-insufficient: " + std::to_string(len) +
                                                  " digits need --lmax " + std::to_string(len)};
  doc.fields.push_back({"digits", digit_string(digits_of(t.get(), s, len), s)});
  emit(doc, c);
  return 0;
}

int cmd_digits(const Common& c, unsigned k, std::uint64_t s, std::uint32_t len, std::optional<std::uint32_t> lmax) {
  const std::uint32_t depth = lmax.value_or(std::max<std::uint32_t>(len, 1));
  if (k != 2 && depth < len)
    throw Failure{GPF_ERR_TABLE_INSUFFICIENT, "table-insufficient: " + std::to_string(len) +
                                                  " digits need --lmax " + std::to_string(len)};
  TablePtr t = acquire_table(c, k, depth);
  const auto d = digits_of(t.get(), s, len);
  std::vector<std::uint32_t> ones, positions;
  for (std::uint32_t i = 0; i < len; ++i) {
    ones.push_back(d[i] ? 1 : 0);
    if (d[i]) positions.push_back(i + 1);
  }
  Doc doc;
  doc.fields = {{"k", k}, {"s", s}, {"length", len}, {"digits", digit_string(d, s)},
                {"unscaled", digit_string(ones, 2)}, {"one_positions", join(positions)}};
  doc.columns = {"position", "digit", "unscaled"};
  for (std::uint32_t i = 0; i < len; ++i) doc.rows.push_back({i + 1, d[i], ones[i]});
  emit(doc, c);
  return 0;
}

int cmd_gaps(const Common& c, unsigned k, std::uint32_t lmax) {
  TablePtr t = acquire_table(c, k, lmax);
  gpf_gaps* raw = nullptr;
  check(gpf_gaps_compute(t.get(), &raw));
  GapsPtr g(raw);
  std::vector<std::uint32_t> u(gpf_gaps_u(g.get(), nullptr, 0));
  gpf_gaps_u(g.get(), u.data(), u.size());
  std::vector<std::uint32_t> diffs(gpf_gaps_diffs(g.get(), nullptr, 0));
  gpf_gaps_diffs(g.get(), diffs.data(), diffs.size());
  std::vector<std::uint32_t> runmax(gpf_gaps_running_max(g.get(), nullptr, 0));
  gpf_gaps_running_max(g.get(), runmax.data(), runmax.size());
  std::vector<std::uint32_t> records(gpf_gaps_records(g.get(), nullptr, 0));
  gpf_gaps_records(g.get(), records.data(), records.size());

  Doc doc;
  doc.fields = {{"k", k}, {"lmax", lmax}, {"terms", u.size()},
                {"record_positions", join(records)},
                {"running_max_increases", records.empty() ? 0 : records.size() - 1}};
  doc.columns = {"m", "u", "gap", "running_max", "record"};
  for (std::size_t m = 0; m < u.size(); ++m) {
    const bool has_gap = m < diffs.size();
    bool record = false;
    for (auto r : records) record = record || r == m + 1;
    doc.rows.push_back({m + 1, u[m], has_gap ? json(diffs[m]) : json(nullptr),
                        has_gap ? json(runmax[m]) : json(nullptr), record});
  }
  emit(doc, c);
  return 0;
}

int cmd_convergence(const Common& c, unsigned k, std::uint64_t s, const std::vector<std::uint64_t>& ns,
                    std::optional<std::uint32_t> lmax, const std::string& plot_path) {
  std::uint32_t depth = lmax.value_or(0);
  for (auto n : ns) {
    if (n == 0) throw Failure{GPF_ERR_INVALID_ARGUMENT, "invalid-argument: n must be >= 1"};
    if (!lmax) depth = std::max(depth, table_depth(s, n));
  }
  TablePtr t = acquire_table(c, k, depth);
  gpf_convergence* raw = nullptr;
  check(gpf_convergence_compute(t.get(), s, ns.data(), ns.size(), &raw));
  ConvPtr conv(raw);

  Doc doc;
  doc.fields = {{"k", k}, {"s", s}, {"lmax", depth}};
  doc.columns = {"n", "g", "g_over_n", "g_over_n_decimal", "theta_lo", "theta_hi", "deviation"};
  Doc plot;
  plot.columns = {"n", "g", "g_over_n", "theta_lo", "theta_hi"};
  for (std::size_t i = 0; i < gpf_convergence_rows(conv.get()); ++i) {
    const std::uint64_t n = gpf_convergence_n(conv.get(), i);
    const std::uint64_t g = gpf_convergence_g(conv.get(), i);
    const std::string ratio = gpf_convergence_field(conv.get(), i, 0);
    const std::string lo = decimal(gpf_convergence_field(conv.get(), i, 1), c.precision, GPF_ROUND_DOWN);
    const std::string hi = decimal(gpf_convergence_field(conv.get(), i, 2), c.precision, GPF_ROUND_UP);
    const std::string ratio_dec = decimal(ratio, c.precision, GPF_ROUND_NEAREST);
    doc.rows.push_back({n, g, ratio, ratio_dec, lo, hi,
                        decimal(gpf_convergence_field(conv.get(), i, 3), c.precision, GPF_ROUND_NEAREST)});
    plot.rows.push_back({n, g, ratio_dec, lo, hi});
  }
  emit(doc, c);
  if (!plot_path.empty()) {
    Common to_file = c;
    to_file.format = "csv";
    to_file.output = plot_path;
    emit(plot, to_file);
  }
  return 0;
}

int cmd_compare(const Common& c, unsigned k, std::uint64_t s, std::uint64_t s2, std::uint64_t nmax) {
  if (nmax < 1) throw Failure{GPF_ERR_INVALID_ARGUMENT, "invalid-argument: --nmax must be >= 1"};
  TablePtr t = acquire_table(c, k, table_depth(std::min(s, s2), nmax));
  gpf_compare* raw = nullptr;
  check(gpf_compare_compute(t.get(), s, s2, nmax, &raw));
  ComparePtr cmp(raw);

  const auto first_violation = gpf_compare_first_violation(cmp.get());
  const auto first_strict = gpf_compare_first_strict(cmp.get());
  Doc doc;
  doc.fields = {{"k", k}, {"s", s}, {"s2", s2}, {"nmax", nmax},
                {"first_violation", first_violation ? json(first_violation) : json(nullptr)},
                {"first_strict", first_strict ? json(first_strict) : json(nullptr)}};
  const std::string g_s = "g_s" + std::to_string(s);
  const std::string g_s2 = "g_s" + std::to_string(s2);
  doc.columns = {"n", g_s, g_s2, "cmp"};
  for (std::size_t i = 0; i < gpf_compare_rows(cmp.get()); ++i) {
    std::uint64_t n = 0, a = 0, b = 0;
    check(gpf_compare_row(cmp.get(), i, &n, &a, &b));
    doc.rows.push_back({n, a, b, b < a ? "<" : (b == a ? "=" : ">")});
  }
  emit(doc, c);
  return 0;
}

int cmd_multi(const Common& c, unsigned k, const std::vector<std::uint64_t>& ratios, std::uint64_t n,
              std::uint32_t cap) {
  if (n > UINT32_MAX) throw Failure{GPF_ERR_ORACLE_CAP, "oracle-cap: n = " + std::to_string(n) + " is far over the oracle cap"};
  std::uint64_t value = 0;
  check(gpf_g_multi_bruteforce(k, ratios.data(), ratios.size(), static_cast<std::uint32_t>(n), cap, &value));
  std::string text;
  for (std::size_t i = 0; i < ratios.size(); ++i) text += (i ? "," : "") + std::to_string(ratios[i]);
  Doc doc;
  doc.fields = {{"k", k}, {"ratios", text}, {"n", n}, {"g", value}};
  emit(doc, c);
  return 0;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  sub->add_option("--output", c.output, "Write output to this file instead of stdout");
  sub->add_option("--cache", c.cache, "Cache directory (default: $GPFREE_CACHE_DIR or ~/.cache/gpfree)");
  sub->add_flag("--no-cache", c.no_cache, "Compute tables in memory only");
  sub->add_option("--precision", c.precision, "Decimal digits for rational rendering")
      ->check(CLI::Range(1u, 10000u));
  sub->add_option("--budget", c.budget, "Search node budget for r_k (0 = library default)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for geometric-progression-free sets"};
  app.require_subcommand(1);
  Common c;

  unsigned k = 3;
  std::uint32_t lmax = 0;
  std::string s_text = "2", s2_text, n_text, n_list_text, ratios_text, plot_path;
  std::optional<std::uint64_t> terms;
  std::optional<std::uint32_t> digits_len, lmax_opt;
  std::uint32_t len = 0, oracle_cap = 24;
  bool with_witness = false, chains = false, by_length = false;

  auto* rk = app.add_subcommand("rk", "Tabulate r_k(ell) with extremal witnesses");
  rk->add_option("--k", k, "Progression length")->required()->check(CLI::Range(2u, 64u));
  rk->add_option("--lmax", lmax, "Largest ell")->required()->check(CLI::Range(1u, 256u));

  auto* g = app.add_subcommand("g", "g_k^(s)(n) by the chain formula");
  g->add_option("--k", k)->required()->check(CLI::Range(2u, 64u));
  g->add_option("--s", s_text)->required();
  g->add_option("--n", n_text)->required();
  g->add_flag("--witness", with_witness, "Print an extremal subset");
  g->add_flag("--chains", chains, "Per-root breakdown (n <= 100000)");
  g->add_flag("--by-length", by_length, "Breakdown grouped by chain length");

  auto* theta = app.add_subcommand("theta", "Exact enclosure of the limit constant");
  theta->add_option("--k", k)->required()->check(CLI::Range(2u, 64u));
  theta->add_option("--s", s_text)->required();
  theta->add_option("--terms", terms, "Number of series terms (default: all known)");
  theta->add_option("--digits", digits_len, "Digit prefix length (default: --lmax)");
  theta->add_option("--lmax", lmax, "Depth of the r_k table")->default_val(40)->check(CLI::Range(1u, 256u));

  auto* digits = app.add_subcommand("digits", "Base-s digits of the limit constant");
  digits->add_option("--k", k)->required()->check(CLI::Range(2u, 64u));
  digits->add_option("--s", s_text)->required();
  digits->add_option("--len", len, "Number of digits")->required()->check(CLI::Range(1u, 100000u));
  digits->add_option("--lmax", lmax_opt, "Depth of the r_k table (default: --len)")->check(CLI::Range(1u, 256u));

  auto* gaps = app.add_subcommand("gaps", "u_m = min r_k^-1(m) and its gap records");
  gaps->add_option("--k", k)->required()->check(CLI::Range(2u, 64u));
  gaps->add_option("--lmax", lmax)->default_val(40)->check(CLI::Range(1u, 256u));

  auto* conv = app.add_subcommand("convergence", "g_k^(s)(n)/n against the limit enclosure");
  conv->add_option("--k", k)->required()->check(CLI::Range(2u, 64u));
  conv->add_option("--s", s_text)->required();
  conv->add_option("--n-list", n_list_text, "Comma-separated n values")->required();
  conv->add_option("--lmax", lmax_opt, "Depth of the r_k table (default: what the largest n needs)")
      ->check(CLI::Range(1u, 256u));
  conv->add_option("--emit-plot-data", plot_path, "Also write n,g,g_over_n,theta_lo,theta_hi CSV here");

  auto* compare = app.add_subcommand("compare", "g_k^(s2)(n) versus g_k^(s)(n) for n <= nmax");
  compare->add_option("--k", k)->required()->check(CLI::Range(2u, 64u));
  compare->add_option("--s", s_text)->required();
  compare->add_option("--s2", s2_text)->required();
  compare->add_option("--nmax", n_text)->required();

  auto* multi = app.add_subcommand("multi", "Brute-force g for several ratio bases at once");
  multi->add_option("--k", k)->required()->check(CLI::Range(2u, 64u));
  multi->add_option("--ratios", ratios_text, "Comma-separated bases")->required();
  multi->add_option("--n", n_text)->required();
  multi->add_option("--oracle-cap", oracle_cap, "Raise the brute-force cap (exponential cost)")
      ->check(CLI::Range(1u, 63u));

  for (auto* sub : {rk, g, theta, digits, gaps, conv, compare, multi}) add_common(sub, c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (rk->parsed()) return cmd_rk(c, k, lmax);
    if (g->parsed())
      return cmd_g(c, k, parse_natural(s_text, "s"), parse_natural(n_text, "n"), with_witness, chains, by_length);
    if (theta->parsed()) return cmd_theta(c, k, parse_natural(s_text, "s"), terms, digits_len, lmax);
    if (digits->parsed()) return cmd_digits(c, k, parse_natural(s_text, "s"), len, lmax_opt);
    if (gaps->parsed()) return cmd_gaps(c, k, lmax);
    if (conv->parsed())
      return cmd_convergence(c, k, parse_natural(s_text, "s"), parse_list(n_list_text, "n"), lmax_opt, plot_path);
    if (compare->parsed())
      return cmd_compare(c, k, parse_natural(s_text, "s"), parse_natural(s2_text, "s2"),
                         parse_natural(n_text, "nmax"));
    if (multi->parsed())
      return cmd_multi(c, k, parse_list(ratios_text, "ratios"), parse_natural(n_text, "n"), oracle_cap);
  } catch (const Failure& f) {
    std::cerr << "gpfree: " << f.message << '\n';
    return static_cast<int>(f.status);
  }
  return 1;
}
