#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "krein/app.hpp"
#include "krein/errors.hpp"

namespace krein::app {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "mode",       "domain",     "dim",          "a",           "b",          "lo",
      "hi",         "h",          "cells",        "m",           "degree",     "cells_per_axis",
      "refine",     "knots",      "vanishing",    "lambda_min",  "lambda_max", "lambda_ratio",
      "lambdas",    "friedrichs", "how_many",     "n_max",       "m_max",      "seed",
      "out"};
  return keys;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  return out;
}

std::map<std::string, Entry> tokenize(std::string_view text) {
  static const std::regex key_re(R"(([A-Za-z_][A-Za-z0-9_]*)\s*=)");
  std::map<std::string, Entry> entries;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;

    std::vector<std::smatch> keys;
    for (auto it = std::sregex_iterator(line.begin(), line.end(), key_re); it != std::sregex_iterator();
         ++it)
      keys.push_back(*it);
    if (keys.empty()) throw ParseError(line_no, "expected key = value");
    if (!trim(line.substr(0, static_cast<std::size_t>(keys.front().position()))).empty())
      throw ParseError(line_no, "unexpected text before the first key");

    for (std::size_t k = 0; k < keys.size(); ++k) {
      const std::string key = keys[k][1].str();
      const auto begin = static_cast<std::size_t>(keys[k].position() + keys[k].length());
      const auto end = k + 1 < keys.size() ? static_cast<std::size_t>(keys[k + 1].position())
                                           : line.size();
      std::string value = trim(line.substr(begin, end - begin));
      if (!known_keys().contains(key)) throw ParseError(line_no, "unknown key '" + key + "'");
      if (value.empty()) throw ParseError(line_no, "empty value for '" + key + "'");
      if (entries.contains(key)) throw ParseError(line_no, "duplicate key '" + key + "'");
      entries[key] = {std::move(value), line_no};
    }
  }
  return entries;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.contains(key); }
  const Entry& raw(const std::string& key) const { return entries_.at(key); }

  double number(const std::string& key, const std::string& text) const {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
      throw ParseError(raw(key).line, "'" + key + "' expects a number, got '" + text + "'");
    return v;
  }

  long long integer(const std::string& key, const std::string& text) const {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw ParseError(raw(key).line, "'" + key + "' expects an integer, got '" + text + "'");
    return v;
  }

  std::optional<double> get_double(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return number(key, raw(key).value);
  }

  std::optional<long long> get_int(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return integer(key, raw(key).value);
  }

  std::vector<double> get_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split(raw(key).value, ',')) out.push_back(number(key, item));
    return out;
  }

  std::optional<bool> get_bool(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    std::string v = raw(key).value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ParseError(raw(key).line, "'" + key + "' expects true or false");
  }

  std::vector<std::vector<int>> get_cells(const std::string& key) const {
    std::vector<std::vector<int>> cells;
    for (const auto& tuple : split(raw(key).value, ';')) {
      if (tuple.empty()) continue;
      std::vector<int> c;
      for (const auto& item : split(tuple, ','))
        c.push_back(static_cast<int>(integer(key, item)));
      cells.push_back(std::move(c));
    }
    return cells;
  }

 private:
  std::map<std::string, Entry> entries_;
};

int positive_int(const Reader& r, const std::string& key, long long fallback, long long max) {
  const long long v = r.get_int(key).value_or(fallback);
  if (v < 1 || v > max)
    throw ValidationError(key + " must lie in [1, " + std::to_string(max) + "]");
  return static_cast<int>(v);
}

basis::DomainSpec read_domain(const Reader& r, int& dim) {
  std::string kind;
  if (r.has("domain")) {
    kind = r.raw("domain").value;
    if (kind != "interval" && kind != "box" && kind != "cells")
      throw ParseError(r.raw("domain").line, "domain must be interval, box or cells");
  } else if (r.has("cells")) {
    kind = "cells";
  } else if (r.has("lo") || r.has("hi") || r.get_int("dim").value_or(1) > 1) {
    kind = "box";
  } else {
    kind = "interval";
  }

  if (kind == "interval") {
    if (r.has("lo") || r.has("hi") || r.has("cells") || r.has("h"))
      throw ValidationError("interval domains take a and b only");
    if (r.get_int("dim").value_or(1) != 1) throw ValidationError("interval domains need dim = 1");
    dim = 1;
    return basis::DomainSpec::interval(r.get_double("a").value_or(0.0), r.get_double("b").value_or(1.0));
  }
  if (r.has("a") || r.has("b")) throw ValidationError("a and b apply to interval domains only");

  if (kind == "box") {
    if (r.has("cells") || r.has("h")) throw ValidationError("box domains take lo and hi only");
    std::size_t n = 2;
    if (r.has("dim")) n = static_cast<std::size_t>(positive_int(r, "dim", 2, 3));
    else if (r.has("lo")) n = r.get_list("lo").size();
    else if (r.has("hi")) n = r.get_list("hi").size();
    std::vector<double> lo = r.has("lo") ? r.get_list("lo") : std::vector<double>(n, 0.0);
    std::vector<double> hi = r.has("hi") ? r.get_list("hi") : std::vector<double>(n, 1.0);
    if (lo.size() != n || hi.size() != n)
      throw ValidationError("lo and hi need dim = " + std::to_string(n) + " entries");
    dim = static_cast<int>(n);
    return basis::DomainSpec::box(std::move(lo), std::move(hi));
  }

  if (r.has("lo") || r.has("hi")) throw ValidationError("cell unions take h and cells only");
  if (!r.has("cells")) throw ValidationError("cell unions need a cells list");
  if (!r.has("h")) throw ValidationError("cell unions need the cell width h");
  auto dom = basis::DomainSpec::cell_union(*r.get_double("h"), r.get_cells("cells"));
  if (r.has("dim") && *r.get_int("dim") != dom.dimension())
    throw ValidationError("dim does not match the cell tuples");
  dim = dom.dimension();
  return dom;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + format_number(v[k]);
  return s;
}

}  // namespace

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::Spectrum: return "spectrum";
    case Mode::Count: return "count";
    case Mode::BoundTable: return "bound-table";
    case Mode::Verify: return "verify";
    case Mode::Oracle: return "oracle";
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : {Mode::Spectrum, Mode::Count, Mode::BoundTable, Mode::Verify, Mode::Oracle})
    if (mode_name(m) == name) return m;
  throw ValidationError("unknown mode '" + std::string(name) +
                        "' (spectrum, count, bound-table, verify, oracle)");
}

RunConfig parse_config(std::string_view text, std::optional<Mode> mode) {
  const Reader r(tokenize(text));
  RunConfig c;

  if (r.has("mode")) {
    try {
      c.mode = parse_mode(r.raw("mode").value);
    } catch (const ValidationError& e) {
      throw ParseError(r.raw("mode").line, e.what());
    }
    if (mode && *mode != c.mode)
      throw ParseError(r.raw("mode").line, "mode '" + r.raw("mode").value +
                                               "' conflicts with requested mode '" +
                                               std::string(mode_name(*mode)) + "'");
  }
  if (mode) c.mode = *mode;

  int dim = 1;
  c.domain = read_domain(r, dim);

  const int m = positive_int(r, "m", 1, 4);
  c.basis.m = m;
  c.basis.degree = positive_int(r, "degree", 2 * m + 1, 12);
  if (c.domain.is_cell_union()) {
    if (r.has("cells_per_axis")) throw ValidationError("cell unions use refine, not cells_per_axis");
    c.basis.cells_per_axis = positive_int(r, "refine", 4, 64);
  } else {
    if (r.has("refine")) throw ValidationError("refine applies to cell unions only");
    c.basis.cells_per_axis = positive_int(r, "cells_per_axis", dim == 1 ? 32 : 12, 4096);
  }
  if (r.has("knots")) {
    const auto& v = r.raw("knots").value;
    if (v == "auto") c.basis.knots = basis::KnotLayout::Auto;
    else if (v == "clamped") c.basis.knots = basis::KnotLayout::Clamped;
    else if (v == "uniform") c.basis.knots = basis::KnotLayout::Uniform;
    else throw ParseError(r.raw("knots").line, "knots must be auto, clamped or uniform");
  }
  if (r.has("vanishing")) {
    const long long v = *r.get_int("vanishing");
    if (v < 0) throw ValidationError("vanishing must be >= 0");
    c.basis.boundary_vanishing = static_cast<int>(v);
  }

  c.lambdas.min = r.get_double("lambda_min");
  c.lambdas.max = r.get_double("lambda_max");
  c.lambdas.ratio = r.get_double("lambda_ratio").value_or(1.2);
  if (!(c.lambdas.ratio > 1.0)) throw ValidationError("lambda_ratio must be > 1");
  if (c.lambdas.min && !(*c.lambdas.min > 0.0)) throw ValidationError("lambda_min must be > 0");
  if (c.lambdas.max && !(*c.lambdas.max > 0.0)) throw ValidationError("lambda_max must be > 0");
  if (c.lambdas.min && c.lambdas.max && !(*c.lambdas.min < *c.lambdas.max))
    throw ValidationError("lambda_min must be below lambda_max");
  if (r.has("lambdas")) {
    if (c.lambdas.min || c.lambdas.max || r.has("lambda_ratio"))
      throw ValidationError("give either lambdas or lambda_min/lambda_max/lambda_ratio");
    c.lambdas.explicit_values = r.get_list("lambdas");
    for (std::size_t k = 0; k < c.lambdas.explicit_values.size(); ++k) {
      if (!(c.lambdas.explicit_values[k] > 0.0)) throw ValidationError("lambdas must be > 0");
      if (k > 0 && !(c.lambdas.explicit_values[k] > c.lambdas.explicit_values[k - 1]))
        throw ValidationError("lambdas must be strictly ascending");
    }
  }

  c.friedrichs = r.get_bool("friedrichs").value_or(true);
  if (r.has("how_many")) c.how_many = static_cast<std::size_t>(positive_int(r, "how_many", 1, 100000));
  c.n_max = positive_int(r, "n_max", 3, 8);
  c.m_max = positive_int(r, "m_max", 3, 8);
  if (const auto s = r.get_int("seed")) {
    if (*s < 0) throw ValidationError("seed must be >= 0");
    c.seed = static_cast<std::uint64_t>(*s);
  }
  if (r.has("out")) c.out = r.raw("out").value;

  // Fail fast: every basis precondition is checked before any computation.
  if (c.mode == Mode::Oracle) {
    if (!std::holds_alternative<basis::Interval>(c.domain.shape()) || m != 1)
      throw ValidationError("oracle mode needs an interval domain and m = 1");
  } else if (c.mode != Mode::BoundTable) {
    (void)basis::build_basis(c.domain, c.basis);
  }
  return c;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("mode", std::string(mode_name(mode)));
  const auto& shape = domain.shape();
  if (const auto* iv = std::get_if<basis::Interval>(&shape)) {
    e.emplace_back("domain", "interval");
    e.emplace_back("a", format_number(iv->a));
    e.emplace_back("b", format_number(iv->b));
  } else if (const auto* bx = std::get_if<basis::Box>(&shape)) {
    e.emplace_back("domain", "box");
    e.emplace_back("lo", join(bx->lo));
    e.emplace_back("hi", join(bx->hi));
  } else {
    const auto& cu = std::get<basis::CellUnion>(shape);
    e.emplace_back("domain", "cells");
    e.emplace_back("h", format_number(cu.h));
    std::string cells;
    for (std::size_t k = 0; k < cu.cells.size(); ++k) {
      if (k) cells += ";";
      for (std::size_t j = 0; j < cu.cells[k].size(); ++j)
        cells += (j ? "," : "") + std::to_string(cu.cells[k][j]);
    }
    e.emplace_back("cells", cells);
  }
  e.emplace_back("dim", std::to_string(domain.dimension()));
  e.emplace_back("volume", format_number(domain.volume()));
  e.emplace_back("m", std::to_string(basis.m));
  e.emplace_back("degree", std::to_string(basis.degree));
  e.emplace_back(domain.is_cell_union() ? "refine" : "cells_per_axis",
                 std::to_string(basis.cells_per_axis));
  const char* layouts[] = {"auto", "clamped", "uniform"};
  e.emplace_back("knots", layouts[static_cast<int>(basis.knots)]);
  if (basis.boundary_vanishing) e.emplace_back("vanishing", std::to_string(*basis.boundary_vanishing));
  if (!lambdas.explicit_values.empty()) {
    e.emplace_back("lambdas", join(lambdas.explicit_values));
  } else {
    if (lambdas.min) e.emplace_back("lambda_min", format_number(*lambdas.min));
    if (lambdas.max) e.emplace_back("lambda_max", format_number(*lambdas.max));
    e.emplace_back("lambda_ratio", format_number(lambdas.ratio));
  }
  e.emplace_back("friedrichs", friedrichs ? "true" : "false");
  if (how_many) e.emplace_back("how_many", std::to_string(*how_many));
  if (mode == Mode::BoundTable) {
    e.emplace_back("n_max", std::to_string(n_max));
    e.emplace_back("m_max", std::to_string(m_max));
  }
  e.emplace_back("seed", std::to_string(seed));
  return e;
}

}  // namespace krein::app
