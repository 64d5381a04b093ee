#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "internal.hpp"
#include "krein/bounds.hpp"
#include "krein/errors.hpp"

namespace krein::app {

namespace detail {

forms::AssembledForms assemble(const RunConfig& config) {
  auto b = std::make_shared<const basis::Basis>(basis::build_basis(config.domain, config.basis));
  return forms::assemble_forms(std::move(b));
}

std::vector<double> lambda_grid(const RunConfig& config, const spectra::SpectrumResult* krein) {
  const auto& g = config.lambdas;
  if (!g.explicit_values.empty()) return g.explicit_values;
  if (!g.min && !g.max) {
    if (krein == nullptr) throw ValidationError("no lambda range configured");
    return spectra::default_lambda_grid(*krein, g.ratio);
  }
  double lo = 0.0, hi = 0.0;
  if (g.min) {
    lo = *g.min;
  } else {
    if (krein == nullptr || krein->eigenvalues.empty()) throw ValidationError("lambda_min missing");
    lo = 0.5 * krein->eigenvalues.front();
  }
  if (g.max) {
    hi = *g.max;
  } else {
    if (krein == nullptr || krein->eigenvalues.empty()) throw ValidationError("lambda_max missing");
    hi = krein->eigenvalues[std::max<std::size_t>(1, krein->eigenvalues.size() / 2) - 1];
  }
  if (!(lo < hi)) throw ValidationError("lambda range is empty (lambda_min >= lambda_max)");
  auto grid = spectra::geometric_grid(lo, hi, g.ratio);
  grid.push_back(hi);
  return grid;
}

double relative_residual(const linalg::SymMatrix& a, const linalg::SymMatrix& b,
                         const spectra::SpectrumResult& s) {
  if (s.eigenvalues.empty()) return 0.0;
  const double scale = a.max_abs() + std::abs(s.eigenvalues.back()) * b.max_abs();
  double worst = 0.0;
  for (std::size_t j = 0; j < s.eigenvalues.size(); ++j) {
    const auto x = s.vectors.column(j);
    const auto ax = a.multiply(x), bx = b.multiply(x);
    for (std::size_t i = 0; i < x.size(); ++i)
      worst = std::max(worst, std::abs(ax[i] - s.eigenvalues[j] * bx[i]));
  }
  return worst / scale;
}

Check make_check(std::string name, std::string property, bool passed, std::string detail) {
  return {std::move(name), std::move(property), passed, std::move(detail)};
}

}  // namespace detail

namespace {

using detail::make_check;

constexpr double kResidualTol = 1e-8;

RunReport run_spectrum(const RunConfig& config) {
  RunReport rep;
  detail::Stopwatch sw;
  const auto f = detail::assemble(config);
  rep.timings.emplace_back("assemble", sw.lap());
  const auto krein = spectra::krein_positive_spectrum(f);
  rep.timings.emplace_back("krein_solve", sw.lap());
  std::optional<spectra::SpectrumResult> fried;
  if (config.friedrichs) {
    fried = spectra::friedrichs_spectrum(f);
    rep.timings.emplace_back("friedrichs_solve", sw.lap());
  }

  rep.table.columns = {"index", "lambda", "friedrichs_mu"};
  const std::size_t rows = std::min(krein.eigenvalues.size(), config.how_many.value_or(krein.eigenvalues.size()));
  for (std::size_t j = 0; j < rows; ++j) {
    Cell mu;
    if (fried) mu = fried->eigenvalues[j];
    rep.table.rows.push_back({static_cast<std::int64_t>(j + 1), krein.eigenvalues[j], mu});
  }

  const double res = detail::relative_residual(f.a, f.b, krein);
  rep.checks.push_back(make_check("eigen_residual", "buckling eigenpairs satisfy A x = lambda B x",
                                  res <= kResidualTol, "relative residual " + format_number(res)));
  if (fried) {
    std::size_t bad = 0;
    for (std::size_t j = 0; j < krein.eigenvalues.size(); ++j)
      bad += fried->eigenvalues[j] > krein.eigenvalues[j];
    rep.checks.push_back(make_check("eigenvalue_ordering",
                                    "Friedrichs eigenvalues never exceed Krein eigenvalues",
                                    bad == 0, std::to_string(bad) + " violations"));
  }
  if (std::holds_alternative<basis::Interval>(config.domain.shape()) && config.basis.m == 1) {
    const auto& iv = std::get<basis::Interval>(config.domain.shape());
    const std::size_t k = std::min<std::size_t>(rows, 10);
    const auto exact = spectra::oracle_1d_krein(iv.a, iv.b, k);
    std::size_t bad = 0;
    for (std::size_t j = 0; j < k; ++j) bad += krein.eigenvalues[j] < exact[j] * (1.0 - 1e-10);
    rep.checks.push_back(make_check("oracle_upper_bound",
                                    "discrete eigenvalues lie above the exact ones (conforming min-max)",
                                    bad == 0, std::to_string(bad) + " of " + std::to_string(k) + " below"));
  }
  return rep;
}

RunReport run_count(const RunConfig& config) {
  RunReport rep;
  detail::Stopwatch sw;
  const auto f = detail::assemble(config);
  rep.timings.emplace_back("assemble", sw.lap());

  std::optional<spectra::SpectrumResult> krein;
  const auto& g = config.lambdas;
  if (g.explicit_values.empty() && (!g.min || !g.max)) {
    krein = spectra::krein_positive_spectrum(f);
    rep.timings.emplace_back("krein_solve", sw.lap());
  }
  const auto grid = detail::lambda_grid(config, krein ? &*krein : nullptr);
  const auto params = bounds::BoundParams::make(config.domain.dimension(), config.basis.m,
                                                config.domain.volume());
  const auto curve = spectra::counting_curve(f, grid, params, config.friedrichs);
  rep.timings.emplace_back("count", sw.lap());

  rep.table.columns = {"lambda", "count", "krein_bound", "weyl", "friedrichs_count"};
  std::size_t breached = 0, unordered = 0, on_spectrum = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    Cell fc;
    if (curve.friedrichs_counts) {
      fc = static_cast<std::int64_t>((*curve.friedrichs_counts)[k]);
      unordered += (*curve.friedrichs_counts)[k] < curve.counts[k];
    }
    breached += static_cast<double>(curve.counts[k]) > curve.bound_values[k];
    on_spectrum += curve.on_eigenvalue[k];
    rep.table.rows.push_back({grid[k], static_cast<std::int64_t>(curve.counts[k]),
                              curve.bound_values[k], curve.weyl_values[k], fc});
  }
  rep.checks.push_back(make_check("krein_bound",
                                  "discrete counting function stays at or below the Krein bound",
                                  breached == 0,
                                  std::to_string(breached) + " of " + std::to_string(grid.size()) +
                                      " grid points above the bound"));
  if (curve.friedrichs_counts)
    rep.checks.push_back(make_check("count_ordering", "Friedrichs counts dominate Krein counts",
                                    unordered == 0, std::to_string(unordered) + " violations"));
  if (on_spectrum > 0)
    rep.checks.push_back(make_check("grid_off_spectrum", "no grid point hits a discrete eigenvalue",
                                    true, std::to_string(on_spectrum) +
                                              " grid points on the spectrum (counted strictly below)"));
  return rep;
}

RunReport run_bound_table(const RunConfig& config) {
  RunReport rep;
  detail::Stopwatch sw;
  rep.table.columns = {"n", "m", "v_n", "krein_constant", "laptev_constant", "numeric_constant",
                       "alpha_star"};
  std::size_t not_superior = 0, mismatched = 0;
  double worst = 0.0;
  for (int n = 1; n <= config.n_max; ++n)
    for (int m = 1; m <= config.m_max; ++m) {
      const double kc = bounds::krein_constant(n, m), lc = bounds::laptev_constant(n, m);
      const auto num = bounds::bound_constant_numeric(n, m);
      const double rel = std::abs(num.minimum / kc - 1.0);
      worst = std::max(worst, rel);
      not_superior += !(kc < lc);
      mismatched += rel > 1e-6;
      rep.table.rows.push_back({std::int64_t{n}, std::int64_t{m}, bounds::unit_ball_volume(n), kc, lc,
                                num.minimum, num.alpha_star});
    }
  rep.timings.emplace_back("minimize", sw.lap());
  rep.checks.push_back(make_check("superiority", "Krein constant strictly below the Laptev constant",
                                  not_superior == 0, std::to_string(not_superior) + " violations"));
  rep.checks.push_back(make_check("constant_identity",
                                  "minimum of the alpha objective equals the closed-form constant",
                                  mismatched == 0, "max relative deviation " + format_number(worst)));
  return rep;
}

RunReport run_oracle(const RunConfig& config) {
  RunReport rep;
  detail::Stopwatch sw;
  const auto& iv = std::get<basis::Interval>(config.domain.shape());
  const double len = iv.b - iv.a;
  std::vector<double> ev;
  if (config.lambdas.max)
    ev = spectra::oracle_1d_krein_below(iv.a, iv.b, *config.lambdas.max);
  else
    ev = spectra::oracle_1d_krein(iv.a, iv.b, config.how_many.value_or(10));
  if (config.lambdas.max && config.how_many && ev.size() > *config.how_many) ev.resize(*config.how_many);
  rep.timings.emplace_back("roots", sw.lap());

  rep.table.columns = {"index", "lambda", "k"};
  double worst = 0.0;
  for (std::size_t j = 0; j < ev.size(); ++j) {
    const double k = std::sqrt(ev[j]), x = k * len;
    worst = std::max(worst, std::abs(2.0 * (1.0 - std::cos(x)) - x * std::sin(x)) / std::max(1.0, x));
    rep.table.rows.push_back({static_cast<std::int64_t>(j + 1), ev[j], k});
  }
  rep.checks.push_back(make_check("characteristic_root",
                                  "roots solve 2(1 - cos kL) = kL sin kL", worst <= 1e-9,
                                  "max scaled residual " + format_number(worst)));
  return rep;
}

std::string csv_field(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

bool RunReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

RunReport run(const RunConfig& config) {
  RunReport rep;
  switch (config.mode) {
    case Mode::Spectrum: rep = run_spectrum(config); break;
    case Mode::Count: rep = run_count(config); break;
    case Mode::BoundTable: rep = run_bound_table(config); break;
    case Mode::Verify: rep = detail::run_verify(config); break;
    case Mode::Oracle: rep = run_oracle(config); break;
  }
  rep.mode = config.mode;
  rep.config = config.echo();
  return rep;
}

std::string format_number(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s(buf);
  std::replace(s.begin(), s.end(), ',', '.');
  return s;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t k = 0; k < table.columns.size(); ++k) out += (k ? "," : "") + table.columns[k];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + csv_field(row[k]);
    out += '\n';
  }
  return out;
}

std::string to_json(const RunReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["mode"] = std::string(mode_name(report.mode));
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : report.config) cfg[k] = v;
  j["config"] = cfg;
  j["columns"] = report.table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.table.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& c : row) {
      if (std::holds_alternative<std::monostate>(c)) r.push_back(nullptr);
      else if (const auto* i = std::get_if<std::int64_t>(&c)) r.push_back(*i);
      // Same 12 significant digits as the CSV.
      else if (const auto* d = std::get_if<double>(&c)) r.push_back(std::stod(format_number(*d)));
      else r.push_back(std::get<std::string>(c));
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"property", c.property}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = std::move(checks);
  j["passed"] = report.all_passed();
  ordered_json t = ordered_json::object();
  for (const auto& [k, v] : report.timings) t[k] = v;
  j["timings_seconds"] = std::move(t);
  return j.dump(2) + "\n";
}

int exit_code_for_error(const std::exception& e) {
  if (dynamic_cast<const NumericalError*>(&e) != nullptr) return 2;
  return 1;
}

}  // namespace krein::app
