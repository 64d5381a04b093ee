#include "krein/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "krein/errors.hpp"

namespace krein::spectra {

namespace {

SpectrumResult solve_pencil(const linalg::SymMatrix& lhs, const linalg::SymMatrix& rhs,
                            SpectrumKind kind) {
  if (!lhs.all_finite() || !rhs.all_finite())
    throw BreakdownError("assembled matrices contain non-finite entries (domain scale out of range)");
  linalg::EigDecomp ed = linalg::gen_eig(lhs, rhs);
  for (double v : ed.values)
    if (!(v > 0.0))
      throw NumericalError("pencil produced a nonpositive eigenvalue " + std::to_string(v));
  return {kind, std::move(ed.values), std::move(ed.vectors), lhs.order()};
}

}  // namespace

SpectrumResult krein_positive_spectrum(const forms::AssembledForms& forms) {
  if (forms.basis->boundary_vanishing() < 2 * forms.m)
    throw ValidationError("buckling pencil needs splines vanishing to order 2m on the boundary");
  return solve_pencil(forms.a, forms.b, SpectrumKind::KreinBuckling);
}

SpectrumResult friedrichs_spectrum(const forms::AssembledForms& forms) {
  if (forms.basis->boundary_vanishing() < forms.m)
    throw ValidationError("Friedrichs problem needs splines vanishing to order m on the boundary");
  return solve_pencil(forms.b, forms.mass, SpectrumKind::Friedrichs);
}

CountingCurve counting_curve(const forms::AssembledForms& forms, std::span<const double> lambdas,
                             const bounds::BoundParams& params, bool with_friedrichs) {
  if (forms.basis->boundary_vanishing() < 2 * forms.m)
    throw ValidationError("counting needs splines vanishing to order 2m on the boundary");
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] > 0.0)) throw ValidationError("lambda grid must be positive");
    if (k > 0 && !(lambdas[k] > lambdas[k - 1]))
      throw ValidationError("lambda grid must be strictly ascending");
  }

  CountingCurve c;
  c.lambdas.assign(lambdas.begin(), lambdas.end());
  c.trial_size = forms.a.order();
  if (with_friedrichs) c.friedrichs_counts.emplace();
  for (double lambda : lambdas) {
    const auto pc = linalg::pencil_count_below(forms.a, forms.b, lambda);
    c.counts.push_back(pc.count);
    bool hit = pc.on_eigenvalue();
    if (with_friedrichs) {
      const auto fc = linalg::pencil_count_below(forms.b, forms.mass, lambda);
      c.friedrichs_counts->push_back(fc.count);
      hit = hit || fc.on_eigenvalue();
    }
    c.on_eigenvalue.push_back(hit);
    c.bound_values.push_back(bounds::krein_bound(params, lambda));
    c.weyl_values.push_back(bounds::weyl_leading(params, lambda));
  }
  return c;
}

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
  if (!(lo > 0.0) || !(ratio > 1.0) || !std::isfinite(hi))
    throw ValidationError("geometric grid needs lo > 0 and ratio > 1");
  std::vector<double> g;
  for (int k = 0;; ++k) {
    const double v = lo * std::pow(ratio, k);
    if (!(v < hi)) break;
    g.push_back(v);
  }
  return g;
}

std::vector<double> default_lambda_grid(const SpectrumResult& krein, double ratio) {
  if (krein.eigenvalues.empty()) throw ValidationError("empty spectrum");
  const std::size_t k = std::max<std::size_t>(1, krein.eigenvalues.size() / 2);
  const double hi = krein.eigenvalues[k - 1];
  auto g = geometric_grid(0.5 * krein.eigenvalues.front(), hi, ratio);
  if (g.empty()) g.push_back(0.5 * krein.eigenvalues.front());
  return g;
}

namespace {

// f in terms of x = kL.
double characteristic(double x) { return 2.0 * (1.0 - std::cos(x)) - x * std::sin(x); }

double bisect(double lo, double hi) {
  double flo = characteristic(lo);
  if (flo == 0.0) return lo;
  for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = characteristic(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Roots x of the characteristic function in (0, x_max], in order, scanning
// brackets of the given width. Stops after `limit` roots.
std::vector<double> scan_roots(double x_max, std::size_t limit, double width) {
  std::vector<double> roots;
  // f ~ x^4/12 > 0 near 0 (triple root at the origin is excluded).
  double lo = 0.25 * width;
  double flo = characteristic(lo);
  while (roots.size() < limit && lo < x_max) {
    const double hi = lo + width;
    const double fhi = characteristic(hi);
    if (flo == 0.0 || (flo < 0.0) != (fhi < 0.0) || fhi == 0.0) {
      const double r = fhi == 0.0 ? hi : bisect(lo, hi);
      if (r <= x_max && (roots.empty() || r > roots.back())) roots.push_back(r);
    }
    lo = hi;
    flo = fhi;
  }
  return roots;
}

// Roots alternate: odd positions are 2 pi j, even positions solve
// tan(x/2) = x/2 inside (2 pi j, 2 pi j + pi).
bool interleaved(const std::vector<double>& roots) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const double j = static_cast<double>(k / 2 + 1);
    const double x = roots[k];
    if (k % 2 == 0) {
      if (std::abs(x - two_pi * j) > 1e-8 * x) return false;
    } else if (!(x > two_pi * j && x < two_pi * j + std::numbers::pi)) {
      return false;
    }
  }
  return true;
}

std::vector<double> oracle_roots(double x_max, std::size_t limit) {
  double width = 0.5 * std::numbers::pi;
  auto roots = scan_roots(x_max, limit, width);
  if (!interleaved(roots)) {
    width *= 0.5;
    roots = scan_roots(x_max, limit, width);
    if (!interleaved(roots))
      throw BracketingFailure("characteristic root scan missed a sign change");
  }
  return roots;
}

}  // namespace

std::vector<double> oracle_1d_krein(double a, double b, std::size_t how_many) {
  if (!(b > a)) throw ValidationError("oracle_1d_krein needs a < b");
  const double len = b - a;
  const auto roots = oracle_roots(std::numeric_limits<double>::infinity(), how_many);
  std::vector<double> out;
  for (double x : roots) out.push_back((x / len) * (x / len));
  return out;
}

std::vector<double> oracle_1d_krein_below(double a, double b, double lambda) {
  if (!(b > a)) throw ValidationError("oracle_1d_krein needs a < b");
  if (!(lambda > 0.0)) return {};
  const double len = b - a;
  const double x_max = std::sqrt(lambda) * len;
  const auto roots = oracle_roots(x_max, std::numeric_limits<std::size_t>::max());
  std::vector<double> out;
  for (double x : roots) {
    const double v = (x / len) * (x / len);
    if (v < lambda) out.push_back(v);
  }
  return out;
}

double krein_bc_check(const basis::Basis& basis, double lambda, std::span<const double> u) {
  if (basis.dimension() != 1) throw ValidationError("krein_bc_check is one-dimensional");
  if (basis.m() != 1) throw ValidationError("krein_bc_check requires m = 1");
  if (!(lambda > 0.0)) throw ValidationError("krein_bc_check needs lambda > 0");
  const auto& ax = basis.axis(0);
  const double a = ax.lo(), b = ax.hi();

  double h = b - a;
  const auto& t = ax.knots();
  for (std::size_t k = 0; k + 1 < t.size(); ++k)
    if (t[k + 1] > t[k]) h = std::min(h, t[k + 1] - t[k]);
  const double delta = h / 100.0;

  const auto v = [&](double x, int d) {
    const double xs[1] = {x};
    const int ds[1] = {2 + d};
    return -basis::eval_combination(basis, u, xs, ds) / lambda;
  };
  // One-sided trace with first-order Richardson extrapolation.
  const auto trace = [&](double end, double dir, int d) {
    return 2.0 * v(end + dir * delta, d) - v(end + 2.0 * dir * delta, d);
  };

  const double va = trace(a, 1.0, 0), vb = trace(b, -1.0, 0);
  const double dva = trace(a, 1.0, 1), dvb = trace(b, -1.0, 1);
  const double slope = (vb - va) / (b - a);

  double scale = std::max(std::abs(va), std::abs(vb));
  constexpr int kSamples = 8;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double x0 = std::max(t[k], a), x1 = std::min(t[k + 1], b);
    if (!(x1 > x0)) continue;
    for (int s = 0; s <= kSamples; ++s)
      scale = std::max(scale, std::abs(v(x0 + (x1 - x0) * s / kSamples, 0)));
  }
  if (scale == 0.0) return 0.0;
  return (b - a) * std::max(std::abs(dva - slope), std::abs(dvb - slope)) / scale;
}

double krein_bc_check(const forms::AssembledForms& forms, double lambda,
                      std::span<const double> u) {
  return krein_bc_check(*forms.basis, lambda, u);
}

}  // namespace krein::spectra
