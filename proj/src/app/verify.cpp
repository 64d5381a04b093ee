// The invariant suite behind `verify`. Every check is recorded; numerical
// failures propagate as exceptions.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "internal.hpp"
#include "krein/bounds.hpp"
#include "krein/errors.hpp"
#include "krein/quadrature.hpp"

namespace krein::app::detail {

namespace {

// Values of b_i and (-Delta)^m b_i at one quadrature point, for the functions
// whose support contains it.
struct PointSample {
  double weight = 0.0;
  std::vector<std::size_t> index;
  std::vector<double> value;
  std::vector<double> op_value;
};

std::vector<PointSample> sample_operator(const basis::Basis& b) {
  const int n = b.dimension(), m = b.m();
  const auto terms = forms::multinomial_weights(m, n).terms;
  const double sign = (m % 2) ? -1.0 : 1.0;

  // Distinct knot spans inside the domain, per axis.
  std::vector<std::vector<std::pair<double, double>>> spans(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    const auto& ax = b.axis(a);
    const auto& t = ax.knots();
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
      const double x0 = std::max(t[k], ax.lo()), x1 = std::min(t[k + 1], ax.hi());
      if (x1 > x0) spans[static_cast<std::size_t>(a)].emplace_back(x0, x1);
    }
  }

  std::set<std::vector<int>> cells;
  double h = 0.0;
  if (const auto* cu = std::get_if<basis::CellUnion>(&b.domain().shape())) {
    cells.insert(cu->cells.begin(), cu->cells.end());
    h = cu->h;
  }

  const auto rule = quad::gauss_legendre(b.degree() + 1);
  const std::size_t q = rule.nodes.size();
  std::vector<PointSample> out;
  std::vector<std::size_t> span_idx(static_cast<std::size_t>(n), 0);
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<int> cell(static_cast<std::size_t>(n));
  std::vector<int> deriv(static_cast<std::size_t>(n));
  for (;;) {
    bool inside = true;
    if (!cells.empty()) {
      for (int a = 0; a < n; ++a) {
        const auto& s = spans[static_cast<std::size_t>(a)][span_idx[static_cast<std::size_t>(a)]];
        cell[static_cast<std::size_t>(a)] = static_cast<int>(std::floor(0.5 * (s.first + s.second) / h));
      }
      inside = cells.contains(cell);
    }
    if (inside) {
      std::vector<std::size_t> qi(static_cast<std::size_t>(n), 0);
      for (;;) {
        PointSample ps;
        ps.weight = 1.0;
        for (int a = 0; a < n; ++a) {
          const auto& s = spans[static_cast<std::size_t>(a)][span_idx[static_cast<std::size_t>(a)]];
          const double half = 0.5 * (s.second - s.first);
          x[static_cast<std::size_t>(a)] = s.first + half * (rule.nodes[qi[static_cast<std::size_t>(a)]] + 1.0);
          ps.weight *= half * rule.weights[qi[static_cast<std::size_t>(a)]];
        }
        std::fill(deriv.begin(), deriv.end(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) {
          const double v = basis::eval_basis(b, i, x, deriv);
          double op = 0.0;
          for (const auto& t : terms) {
            std::vector<int> d2(t.alpha.size());
            for (std::size_t k = 0; k < d2.size(); ++k) d2[k] = 2 * t.alpha[k];
            op += static_cast<double>(t.weight) * basis::eval_basis(b, i, x, d2);
          }
          if (v != 0.0 || op != 0.0) {
            ps.index.push_back(i);
            ps.value.push_back(v);
            ps.op_value.push_back(sign * op);
          }
        }
        out.push_back(std::move(ps));
        int a = 0;
        while (a < n && ++qi[static_cast<std::size_t>(a)] == q) qi[static_cast<std::size_t>(a++)] = 0;
        if (a == n) break;
      }
    }
    int a = 0;
    while (a < n && ++span_idx[static_cast<std::size_t>(a)] == spans[static_cast<std::size_t>(a)].size())
      span_idx[static_cast<std::size_t>(a++)] = 0;
    if (a == n) break;
  }
  return out;
}

Check multinomial_check(const forms::AssembledForms& f, std::uint64_t seed) {
  const auto samples = sample_operator(*f.basis);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const double tol = f.basis->dimension() == 1 ? 1e-9 : 1e-6;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> u(f.basis->size());
    for (auto& v : u) v = g(rng);
    double ia = 0.0, ib = 0.0;
    for (const auto& s : samples) {
      double su = 0.0, uu = 0.0;
      for (std::size_t k = 0; k < s.index.size(); ++k) {
        su += u[s.index[k]] * s.op_value[k];
        uu += u[s.index[k]] * s.value[k];
      }
      ia += s.weight * su * su;
      ib += s.weight * uu * su;
    }
    worst = std::max(worst, std::abs(f.a.quadratic_form(u) - ia) / std::abs(ia));
    worst = std::max(worst, std::abs(f.b.quadratic_form(u) - ib) / std::abs(ib));
  }
  return make_check("multinomial_identity",
                    "assembled forms equal pointwise integrals of |S u|^2 and u S u, S = (-Delta)^m",
                    worst <= tol, "max relative deviation " + format_number(worst));
}

Check congruence_check(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> order(1, 10);
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(order(rng));
    linalg::SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) m(i, j) = u(rng);
    linalg::Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c(i, j) = u(rng);
    const auto full = m.to_full();
    linalg::SymMatrix t(n);  // C^T M C
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) s += c(k, i) * full(k, l) * c(l, j);
        t(i, j) = s;
      }
    failures += !(linalg::ldlt_inertia(t, 0.0) == linalg::ldlt_inertia(m, 0.0));
  }
  return make_check("sylvester_congruence", "inertia is invariant under 100 random congruences",
                    failures == 0, std::to_string(failures) + " mismatches");
}

}  // namespace

RunReport run_verify(const RunConfig& config) {
  RunReport rep;
  Stopwatch sw;
  const auto f = assemble(config);
  rep.timings.emplace_back("assemble", sw.lap());
  const auto krein = spectra::krein_positive_spectrum(f);
  const auto fried = spectra::friedrichs_spectrum(f);
  rep.timings.emplace_back("solve", sw.lap());

  const int n = config.domain.dimension(), m = config.basis.m;
  auto& checks = rep.checks;

  const double rk = relative_residual(f.a, f.b, krein), rf = relative_residual(f.b, f.mass, fried);
  checks.push_back(make_check("eigen_residual", "eigenpairs of both pencils satisfy their equations",
                              std::max(rk, rf) <= 1e-8,
                              "buckling " + format_number(rk) + ", Friedrichs " + format_number(rf)));

  std::size_t bad = 0;
  for (std::size_t j = 0; j < krein.eigenvalues.size(); ++j)
    bad += fried.eigenvalues[j] > krein.eigenvalues[j];
  checks.push_back(make_check("eigenvalue_ordering",
                              "Friedrichs eigenvalues never exceed Krein eigenvalues", bad == 0,
                              std::to_string(bad) + " violations"));

  const auto grid = lambda_grid(config, &krein);
  const auto params = bounds::BoundParams::make(n, m, config.domain.volume());
  const auto curve = spectra::counting_curve(f, grid, params, true);
  rep.timings.emplace_back("count", sw.lap());
  std::size_t breached = 0, unordered = 0, mismatched = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    breached += static_cast<double>(curve.counts[k]) > curve.bound_values[k];
    unordered += (*curve.friedrichs_counts)[k] < curve.counts[k];
    if (curve.on_eigenvalue[k]) continue;
    std::size_t direct = 0, direct_f = 0;
    for (double v : krein.eigenvalues) direct += v < grid[k];
    for (double v : fried.eigenvalues) direct_f += v < grid[k];
    mismatched += direct != curve.counts[k] || direct_f != (*curve.friedrichs_counts)[k];
  }
  checks.push_back(make_check("krein_bound", "discrete counting function stays at or below the Krein bound",
                              breached == 0,
                              std::to_string(breached) + " of " + std::to_string(grid.size()) + " above"));
  checks.push_back(make_check("count_ordering", "Friedrichs counts dominate Krein counts",
                              unordered == 0, std::to_string(unordered) + " violations"));
  checks.push_back(make_check("inertia_counts", "inertia counts equal eigensolve counts off the spectrum",
                              mismatched == 0, std::to_string(mismatched) + " mismatches"));

  checks.push_back(congruence_check(config.seed));
  checks.push_back(multinomial_check(f, config.seed + 1));
  rep.timings.emplace_back("identities", sw.lap());

  const auto num = bounds::bound_constant_numeric(n, m);
  const double kc = bounds::krein_constant(n, m);
  const double rel = std::abs(num.minimum / kc - 1.0);
  checks.push_back(make_check("constant_identity",
                              "minimum of the alpha objective equals the closed-form constant",
                              rel <= 1e-6, "relative deviation " + format_number(rel)));
  checks.push_back(make_check("superiority", "Krein constant strictly below the Laptev constant",
                              kc < bounds::laptev_constant(n, m),
                              format_number(kc) + " vs " + format_number(bounds::laptev_constant(n, m))));

  if (const auto* iv = std::get_if<basis::Interval>(&config.domain.shape()); iv && m == 1) {
    const std::size_t k = std::min<std::size_t>(5, krein.eigenvalues.size());
    const auto exact = spectra::oracle_1d_krein(iv->a, iv->b, k);
    std::size_t below = 0;
    double worst = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      below += krein.eigenvalues[j] < exact[j] * (1.0 - 1e-10);
      worst = std::max(worst, krein.eigenvalues[j] / exact[j] - 1.0);
    }
    checks.push_back(make_check("oracle_upper_bound",
                                "discrete eigenvalues lie above the exact 1D Krein eigenvalues",
                                below == 0, "max relative excess " + format_number(worst)));

    const double len = iv->b - iv->a;
    const double big = 1e6 / (len * len);
    const double weyl = static_cast<double>(spectra::oracle_1d_krein_below(iv->a, iv->b, big).size()) /
                        bounds::weyl_leading(bounds::BoundParams::make(1, 1, len), big);
    checks.push_back(make_check("weyl_consistency",
                                "exact count at lambda = 1e6 / L^2 matches the Weyl term within 1%",
                                std::abs(weyl - 1.0) < 0.01, "N / weyl = " + format_number(weyl)));

    // The trace relation needs smooth second derivatives, so it is checked on a
    // quintic reference space of at least 64 spans regardless of the run's basis.
    RunConfig ref = config;
    ref.basis.degree = std::max(config.basis.degree, 5);
    ref.basis.cells_per_axis = std::max(config.basis.cells_per_axis, 64);
    ref.basis.knots = basis::KnotLayout::Auto;
    ref.basis.boundary_vanishing.reset();
    const auto rf_forms = assemble(ref);
    const auto rs = spectra::krein_positive_spectrum(rf_forms);
    const double bc = spectra::krein_bc_check(rf_forms, rs.eigenvalues[0], rs.vectors.column(0));
    checks.push_back(make_check("boundary_condition",
                                "v = -u''/lambda satisfies v'(a) = v'(b) = (v(b) - v(a))/(b - a)",
                                bc <= 1e-4, "scaled residual " + format_number(bc) + " at degree " +
                                                std::to_string(ref.basis.degree) + ", " +
                                                std::to_string(ref.basis.cells_per_axis) + " spans"));
  }
  rep.timings.emplace_back("oracles", sw.lap());

  rep.table.columns = {"check", "property", "passed", "detail"};
  for (const auto& c : checks)
    rep.table.rows.push_back({c.name, c.property, std::string(c.passed ? "true" : "false"), c.detail});
  return rep;
}

}  // namespace krein::app::detail
