#include "krein/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "krein/errors.hpp"
#include "krein/quadrature.hpp"

namespace krein::bounds {

namespace {

void check_nm(int n, int m) {
  if (n < 1) throw ValidationError("dimension n must be >= 1");
  if (m < 1) throw ValidationError("order m must be >= 1");
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("lambda must be positive and finite");
}

double prefactor(const BoundParams& p) {
  return std::pow(2.0 * std::numbers::pi, -p.n) * p.v_n * p.volume;
}

}  // namespace

BoundParams BoundParams::make(int n, int m, double volume) {
  check_nm(n, m);
  if (!(volume > 0.0) || !std::isfinite(volume))
    throw ValidationError("volume must be positive and finite");
  return {n, m, volume, unit_ball_volume(n)};
}

double log_gamma(double x) {
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;
  if (!(x > 0.0)) throw ValidationError("log_gamma: argument must be positive");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double a = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) a += c[i] / (z + static_cast<double>(i));
  const double t = z + g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double unit_ball_volume(int n) {
  if (n < 1) throw ValidationError("dimension n must be >= 1");
  const double half_n = 0.5 * n;
  return std::exp(half_n * std::log(std::numbers::pi) - log_gamma(half_n + 1.0));
}

double krein_constant(int n, int m) {
  check_nm(n, m);
  const double base = 1.0 + 2.0 * m / (2.0 * m + n);
  return unit_ball_volume(n) * std::pow(base, n / (2.0 * m));
}

double laptev_constant(int n, int m) {
  check_nm(n, m);
  const double base = 1.0 + 2.0 * m / static_cast<double>(n);
  return unit_ball_volume(n) * std::pow(base, n / (2.0 * m));
}

double krein_bound(const BoundParams& p, double lambda) {
  check_lambda(lambda);
  const double base = 1.0 + 2.0 * p.m / (2.0 * p.m + p.n);
  const double e = p.n / (2.0 * p.m);
  return prefactor(p) * std::pow(base, e) * std::pow(lambda, e);
}

double laptev_friedrichs_bound(const BoundParams& p, double lambda) {
  check_lambda(lambda);
  const double base = 1.0 + 2.0 * p.m / static_cast<double>(p.n);
  const double e = p.n / (2.0 * p.m);
  return prefactor(p) * std::pow(base, e) * std::pow(lambda, e);
}

double weyl_leading(const BoundParams& p, double lambda) {
  check_lambda(lambda);
  return prefactor(p) * std::pow(lambda, p.n / (2.0 * p.m));
}

double minimization_objective(int n, int m, double alpha) {
  check_nm(n, m);
  if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");
  const int two_m = 2 * m;
  const auto bracket = [&](double r) {
    const double r2m = std::pow(r, two_m);
    return alpha - r2m * r2m + r2m;
  };

  // Upper root of t^2 - t - alpha = 0 with t = r^{2m}.
  const double t = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * alpha));
  const double r_max = std::pow(t, 1.0 / two_m);
  if (std::abs(bracket(r_max)) > 1e-9 * (1.0 + alpha))
    throw NumericalError("radial support root failed to solve r^{4m} - r^{2m} = alpha");
  // Positivity set of the bracket must be exactly (0, r_max).
  constexpr int kScan = 256;
  for (int k = 0; k < kScan; ++k) {
    const double r = r_max * (k + 0.5) / kScan;
    if (!(bracket(r) > 0.0))
      throw NumericalError("bracket not positive on (0, r_max) for alpha = " +
                           std::to_string(alpha));
  }
  if (!(bracket(r_max * (1.0 + 1e-6)) < 0.0))
    throw NumericalError("bracket not negative beyond r_max");

  const auto integrand = [&](double r) { return bracket(r) * std::pow(r, n - 1); };
  // Absolute target 1e-10, relaxed to a relative floor where round-off dominates.
  const double coarse = quad::adaptive_simpson(integrand, 0.0, r_max, 1e-3, 20);
  const double tol = std::max(1e-10, 1e-13 * std::abs(coarse));
  const double radial = quad::adaptive_simpson(integrand, 0.0, r_max, tol, 40);
  return n * unit_ball_volume(n) * radial / alpha;
}

ConstantMinimum bound_constant_numeric(int n, int m, double alpha_lo, double alpha_hi) {
  check_nm(n, m);
  if (!(alpha_lo > 0.0) || !(alpha_hi > alpha_lo))
    throw ValidationError("alpha bracket must satisfy 0 < lo < hi");
  const double lo = std::log(alpha_lo), hi = std::log(alpha_hi);
  constexpr double tol = 1e-8;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto g = [&](double x) { return minimization_objective(n, m, std::exp(x)); };

  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double gc = g(c), gd = g(d);
  while (b - a > tol) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  const double x = 0.5 * (a + b);
  if (x - lo < 1e3 * tol || hi - x < 1e3 * tol)
    throw MinimizationAtBoundary("minimizer of g hit the alpha bracket edge (n=" +
                                 std::to_string(n) + ", m=" + std::to_string(m) + ")");
  return {g(x), std::exp(x)};
}

}  // namespace krein::bounds
