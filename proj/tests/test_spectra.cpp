#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "krein/basis.hpp"
#include "krein/bounds.hpp"
#include "krein/errors.hpp"
#include "krein/forms.hpp"
#include "krein/linalg.hpp"
#include "krein/quadrature.hpp"
#include "krein/spectra.hpp"
#include "oracles.hpp"

using namespace krein;
using basis::BasisSpec;
using basis::DomainSpec;
using std::numbers::pi;

namespace {

forms::AssembledForms assemble(const DomainSpec& dom, int p, int c, int m,
                               std::optional<int> vanish = std::nullopt) {
  BasisSpec s;
  s.degree = p;
  s.cells_per_axis = c;
  s.m = m;
  s.boundary_vanishing = vanish;
  return forms::assemble_forms(std::make_shared<const basis::Basis>(basis::build_basis(dom, s)));
}

// L^2 projection of f onto the basis, by Gauss quadrature and a Cholesky solve.
std::vector<double> project(const forms::AssembledForms& f, double (*fn)(double)) {
  const auto& b = *f.basis;
  const auto& ax = b.axis(0);
  const auto& t = ax.knots();
  const auto rule = quad::gauss_legendre(b.degree() + 4);
  std::vector<double> rhs(b.size(), 0.0);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    if (!(t[k + 1] > t[k])) continue;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double x = 0.5 * (t[k] + t[k + 1]) + 0.5 * (t[k + 1] - t[k]) * rule.nodes[q];
      const double w = 0.5 * (t[k + 1] - t[k]) * rule.weights[q];
      for (std::size_t i = 0; i < b.size(); ++i) rhs[i] += w * fn(x) * ax.eval(b.multi_index(i)[0], x, 0);
    }
  }
  const auto l = linalg::cholesky(f.mass);
  const std::size_t n = rhs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) rhs[i] -= l(i, k) * rhs[k];
    rhs[i] /= l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) rhs[i] -= l(k, i) * rhs[k];
    rhs[i] /= l(i, i);
  }
  return rhs;
}

}  // namespace

TEST_CASE("1D oracle: closed-form values and scaling") {
  const auto ev = spectra::oracle_1d_krein(0, 1, 6);
  REQUIRE(ev.size() == 6);
  CHECK(ev[0] == doctest::Approx(4 * pi * pi).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(std::pow(2 * 4.493409457909064, 2)).epsilon(1e-11));
  CHECK(ev[2] == doctest::Approx(16 * pi * pi).epsilon(1e-12));
  for (std::size_t j = 0; j < ev.size(); ++j) {
    const double x = std::sqrt(ev[j]);
    CHECK(std::abs(2 * (1 - std::cos(x)) - x * std::sin(x)) < 1e-9);
    if (j % 2 == 1) CHECK(std::abs(std::tan(x / 2) - x / 2) < 1e-8 * x);
    if (j > 0) CHECK(ev[j] > ev[j - 1]);
  }
  const auto ev2 = spectra::oracle_1d_krein(3, 5, 6);
  for (std::size_t j = 0; j < ev.size(); ++j) CHECK(ev2[j] == doctest::Approx(ev[j] / 4).epsilon(1e-12));

  CHECK(spectra::oracle_1d_krein_below(0, 1, 100).size() == 2);
  CHECK(spectra::oracle_1d_krein_below(0, 1, 4 * pi * pi * 0.999).empty());
}

TEST_CASE("1D Krein spectrum approaches the oracle from above") {
  const auto f = assemble(DomainSpec::interval(0, 1), 5, 64, 1);
  const auto sp = spectra::krein_positive_spectrum(f);
  const auto ev = spectra::oracle_1d_krein(0, 1, 5);
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(sp.eigenvalues[j] >= ev[j] * (1 - 1e-12));
    CHECK((sp.eigenvalues[j] - ev[j]) / ev[j] <= 1e-6);
  }
}

TEST_CASE("refinement decreases discrete eigenvalues") {
  const auto coarse = spectra::krein_positive_spectrum(assemble(DomainSpec::interval(0, 1), 3, 8, 1));
  const auto fine = spectra::krein_positive_spectrum(assemble(DomainSpec::interval(0, 1), 3, 16, 1));
  for (std::size_t j = 0; j < 4; ++j) CHECK(fine.eigenvalues[j] <= coarse.eigenvalues[j] * (1 + 1e-12));
}

TEST_CASE("Friedrichs spectra against closed forms") {
  const auto f1 = assemble(DomainSpec::interval(0, 1), 5, 32, 1, 1);
  const auto mu = spectra::friedrichs_spectrum(f1);
  for (int j = 1; j <= 5; ++j)
    CHECK(std::abs(mu.eigenvalues[j - 1] / std::pow(j * pi, 2) - 1.0) <= 1e-6);

  // Clamped plate in 1D: mu = k^4 with cos k cosh k = 1.
  const auto f2 = assemble(DomainSpec::interval(0, 1), 5, 32, 2, 2);
  const auto mu2 = spectra::friedrichs_spectrum(f2);
  const auto roots = oracle::cos_cosh_roots(4);
  for (std::size_t j = 0; j < 4; ++j)
    CHECK(std::abs(mu2.eigenvalues[j] / std::pow(roots[j], 4) - 1.0) <= 1e-6);

  CHECK_THROWS_AS(spectra::friedrichs_spectrum(assemble(DomainSpec::interval(0, 1), 3, 8, 1, 0)),
                  ValidationError);
}

TEST_CASE("Friedrichs eigenvalues never exceed Krein eigenvalues on a shared space") {
  for (int m : {1, 2}) {
    const auto f = assemble(DomainSpec::interval(0, 1), 2 * m + 1, 24, m);
    const auto lam = spectra::krein_positive_spectrum(f).eigenvalues;
    const auto mu = spectra::friedrichs_spectrum(f).eigenvalues;
    for (std::size_t j = 0; j < lam.size(); ++j) CHECK(mu[j] <= lam[j] * (1 + 1e-10));
  }
}

TEST_CASE("m = 2 Krein spectrum against the boundary determinant") {
  const auto f = assemble(DomainSpec::interval(0, 1), 7, 32, 2);
  const auto sp = spectra::krein_positive_spectrum(f);
  const auto ref = oracle::clamped8_eigenvalues(3);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(sp.eigenvalues[j] >= ref[j] * (1 - 1e-9));
    CHECK((sp.eigenvalues[j] - ref[j]) / ref[j] <= 1e-6);
  }
}

TEST_CASE("counting curve by inertia") {
  const auto f = assemble(DomainSpec::interval(0, 1), 5, 32, 1);
  const auto params = bounds::BoundParams::make(1, 1, 1.0);
  const double at100[] = {100.0};
  const auto c = spectra::counting_curve(f, at100, params, true);
  CHECK(c.counts[0] == 2);
  CHECK(c.bound_values[0] == doctest::Approx(4.1094).epsilon(1e-4));
  CHECK(c.friedrichs_counts->at(0) >= c.counts[0]);

  const auto sp = spectra::krein_positive_spectrum(f);
  const auto grid = spectra::default_lambda_grid(sp);
  REQUIRE(grid.size() > 5);
  const auto curve = spectra::counting_curve(f, grid, params, false);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::size_t direct = 0;
    for (double v : sp.eigenvalues) direct += v < grid[k];
    CHECK(curve.counts[k] == direct);
    CHECK(static_cast<double>(curve.counts[k]) <= curve.bound_values[k]);
    if (k > 0) CHECK(curve.counts[k] >= curve.counts[k - 1]);
  }
  CHECK(grid.back() < sp.eigenvalues[sp.eigenvalues.size() / 2 - 1]);

  const double bad[] = {5.0, 4.0};
  CHECK_THROWS_AS(spectra::counting_curve(f, bad, params, false), ValidationError);
  const double neg[] = {-1.0};
  CHECK_THROWS_AS(spectra::counting_curve(f, neg, params, false), ValidationError);
}

TEST_CASE("geometric grid") {
  const auto g = spectra::geometric_grid(1.0, 10.0, 2.0);
  CHECK(g == std::vector<double>{1.0, 2.0, 4.0, 8.0});
  CHECK_THROWS_AS(spectra::geometric_grid(1.0, 10.0, 1.0), ValidationError);
}

TEST_CASE("Krein boundary condition check") {
  const auto f = assemble(DomainSpec::interval(0, 1), 5, 64, 1);
  const auto sp = spectra::krein_positive_spectrum(f);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto u = sp.vectors.column(j);
    std::vector<double> uu(u.begin(), u.end());
    const double r = spectra::krein_bc_check(f, sp.eigenvalues[j], uu);
    CHECK(r <= (j == 0 ? 1e-4 : 1e-2));
    for (auto& x : uu) x *= -37.5;
    CHECK(spectra::krein_bc_check(f, sp.eigenvalues[j], uu) == doctest::Approx(r).epsilon(1e-9));
  }

  // u = sin(pi x) gives v = sin(pi x): v' = +-pi at the ends against a zero
  // chord slope, so the residual is about pi.
  const auto diag = assemble(DomainSpec::interval(0, 1), 5, 32, 1, 0);
  const auto c = project(diag, [](double x) { return std::sin(pi * x); });
  const double r = spectra::krein_bc_check(diag, pi * pi, c);
  CHECK(r == doctest::Approx(pi).epsilon(1e-3));
  CHECK(r > 0.1);
}
