#include "gpfree/cache_store.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>
#include <vector>

namespace gpfree::cache {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) throw CorruptCache("missing final newline");
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

// Canonical decimal: digits only, no sign, no leading zeros.
std::uint64_t parse_number(std::string_view field, std::string_view what) {
  if (field.empty() || (field.size() > 1 && field[0] == '0'))
    throw CorruptCache("malformed " + std::string(what) + " '" + std::string(field) + "'");
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw CorruptCache("malformed " + std::string(what) + " '" + std::string(field) + "'");
  return value;
}

std::uint64_t header_field(std::string_view line, std::string_view key) {
  if (line.size() <= key.size() + 1 || line.substr(0, key.size()) != key || line[key.size()] != ' ')
    throw CorruptCache("expected '" + std::string(key) + " <n>' header line");
  return parse_number(line.substr(key.size() + 1), key);
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) throw NotFound(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return buf.str();
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string serialize(const RkTable& table) {
  std::string head = std::string(kMagic) + "\nversion " + std::to_string(kFormatVersion) + "\nk " +
                     std::to_string(table.k()) + "\nell_max " + std::to_string(table.ell_max()) + "\n";
  std::string rows;
  for (std::uint32_t ell = 1; ell <= table.ell_max(); ++ell) {
    rows += std::to_string(ell) + ' ' + std::to_string(table.value(ell)) + ' ';
    bool first = true;
    for (Element e : table.witness(ell)) {
      if (!first) rows += ',';
      rows += std::to_string(e);
      first = false;
    }
    rows += '\n';
  }
  return head + "checksum " + hex16(fnv1a(head + rows)) + "\n" + rows;
}

RkTable parse(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != kMagic) throw CorruptCache("bad magic line");
  if (lines.size() < 5) throw CorruptCache("truncated header");

  const auto version = header_field(lines[1], "version");
  if (version != static_cast<std::uint64_t>(kFormatVersion))
    throw VersionMismatch(version > 1'000'000 ? -1 : static_cast<int>(version), kFormatVersion);

  constexpr std::string_view kChecksumKey = "checksum ";
  if (lines[4].substr(0, kChecksumKey.size()) != kChecksumKey || lines[4].size() != kChecksumKey.size() + 16)
    throw CorruptCache("expected 'checksum <16 hex digits>' header line");
  const std::string_view stored = lines[4].substr(kChecksumKey.size());

  // Everything but the checksum line, byte for byte.
  const std::size_t checksum_begin = static_cast<std::size_t>(lines[4].data() - text.data());
  const std::size_t checksum_end = checksum_begin + lines[4].size() + 1;
  std::string covered(text.substr(0, checksum_begin));
  covered += text.substr(checksum_end);
  if (hex16(fnv1a(covered)) != stored) throw CorruptCache("checksum mismatch");

  const auto k = header_field(lines[2], "k");
  const auto ell_max = header_field(lines[3], "ell_max");
  if (lines.size() != 5 + ell_max)
    throw CorruptCache("expected " + std::to_string(ell_max) + " rows, found " + std::to_string(lines.size() - 5));
  if (k < 2 || k > 1'000'000) throw CorruptCache("bad k");

  std::vector<std::uint32_t> values;
  std::vector<std::vector<Element>> witnesses;
  for (std::uint64_t ell = 1; ell <= ell_max; ++ell) {
    const std::string_view row = lines[4 + ell];
    const std::size_t a = row.find(' ');
    const std::size_t b = a == std::string_view::npos ? a : row.find(' ', a + 1);
    if (b == std::string_view::npos || row.find(' ', b + 1) != std::string_view::npos)
      throw CorruptCache("row " + std::to_string(ell) + " is not 'ell value witness'");
    if (parse_number(row.substr(0, a), "ell") != ell) throw CorruptCache("rows are not contiguous from 1");
    const auto value = parse_number(row.substr(a + 1, b - a - 1), "value");
    if (value > ell) throw CorruptCache("value exceeds ell in row " + std::to_string(ell));

    std::vector<Element> w;
    std::string_view list = row.substr(b + 1);
    while (true) {
      const std::size_t comma = list.find(',');
      const auto e = parse_number(list.substr(0, comma), "witness element");
      if (e >= ell) throw CorruptCache("witness element out of range in row " + std::to_string(ell));
      w.push_back(static_cast<Element>(e));
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
    }
    values.push_back(static_cast<std::uint32_t>(value));
    witnesses.push_back(std::move(w));
  }

  try {
    return RkTable(static_cast<unsigned>(k), std::move(values), std::move(witnesses));
  } catch (const InvalidArgument& e) {
    throw CorruptCache(e.what());
  }
}

RkTable load(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const CorruptCache& e) {
    throw CorruptCache(path.string() + ": " + e.detail());
  }
}

void save(const RkTable& table, const std::filesystem::path& path) {
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    try {
      const RkTable existing = load(path);
      if (existing.k() == table.k() && existing.ell_max() > table.ell_max())
        throw WouldTruncate(path, existing.ell_max(), table.ell_max());
    } catch (const CorruptCache&) {
    } catch (const VersionMismatch&) {
    }
  }

  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    const std::string text = serialize(table);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::filesystem::path default_dir() {
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "gpfree";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "gpfree";
  return ".gpfree-cache";
}

std::filesystem::path table_path(const std::filesystem::path& dir, unsigned k) {
  return dir / ("rk_k" + std::to_string(k) + ".txt");
}

RkTable ensure_table(const std::filesystem::path& dir, unsigned k, std::uint32_t ell_max, SearchBudget budget) {
  if (k < 2) throw InvalidArgument("progression length k must be >= 2, got " + std::to_string(k));
  if (ell_max < 1) throw InvalidArgument("ell_max must be >= 1");
  const auto path = table_path(dir, k);

  std::optional<RkTable> cached;
  try {
    cached = load(path);
    if (cached->k() != k) cached.reset();
  } catch (const NotFound&) {
  } catch (const CorruptCache&) {
  } catch (const VersionMismatch&) {
  }

  if (cached && cached->ell_max() >= ell_max) return cached->prefix(ell_max);
  const RkTable base = cached ? *cached : rk_table(k, 1);
  try {
    RkTable grown = extend_table(base, ell_max, budget);
    save(grown, path);
    return grown;
  } catch (const BudgetExhausted& e) {
    if (e.verified_prefix() && e.verified_prefix()->ell_max() > (cached ? cached->ell_max() : 0)) {
      try {
        save(*e.verified_prefix(), path);
      } catch (const Error&) {
      }
    }
    throw;
  }
}

}  // namespace gpfree::cache
