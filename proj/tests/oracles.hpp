#pragma once

// Test-only reference computations. Nothing here calls into the library's
// factorization, eigen, spline-evaluation or quadrature code paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Dense r(rows, std::vector<double>(cols));
  for (auto& row : r)
    for (auto& v : row) v = u(rng);
  return r;
}

inline Dense transpose_times(const Dense& a, const Dense& b) {  // a^T b
  const std::size_t n = a[0].size(), m = b[0].size();
  Dense c(n, std::vector<double>(m, 0.0));
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[k][i] * b[k][j];
  return c;
}

inline Dense multiply(const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), m = b[0].size(), k = b.size();
  Dense c(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

/// Number of eigenvalues of the symmetric tridiagonal (d, e) below x,
/// by the Sturm sequence of leading principal minors.
inline std::size_t sturm_count(const std::vector<double>& d, const std::vector<double>& e,
                               double x) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
    q = d[i] - x - (i == 0 ? 0.0 : off / q);
    if (q == 0.0) q = 1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

/// All eigenvalues of a symmetric tridiagonal matrix by Sturm bisection.
inline std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& d,
                                                   const std::vector<double>& e) {
  double lo = 0, hi = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i < e.size() ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < d.size(); ++k) {
    double a = lo - 1, b = hi + 1;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (sturm_count(d, e, mid) > k)
        b = mid;
      else
        a = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

/// 10-point Gauss-Legendre rule on [-1, 1] (tabulated, exact to degree 19).
inline constexpr double kGauss10Nodes[10] = {
    -0.9739065285171717, -0.8650633666889845, -0.6794095682990244, -0.4333953941292472,
    -0.1488743389816312, 0.1488743389816312,  0.4333953941292472,  0.6794095682990244,
    0.8650633666889845,  0.9739065285171717};
inline constexpr double kGauss10Weights[10] = {
    0.0666713443086881, 0.1494513491505806, 0.2190863625159820, 0.2692667193099963,
    0.2955242247147529, 0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
    0.1494513491505806, 0.0666713443086881};

inline double trapezoid(const std::function<double(double)>& f, double a, double b,
                        std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = 0.5 * (f(a) + f(b));
  for (std::size_t k = 1; k < n; ++k) s += f(a + h * static_cast<double>(k));
  return s * h;
}

/// Textbook Cox-de Boor recursion (right-continuous), plus the derivative
/// recursion N' = p (N_{i,p-1}/(t_{i+p}-t_i) - N_{i+1,p-1}/(t_{i+p+1}-t_{i+1})).
inline double cox_de_boor(const std::vector<double>& t, int i, int p, double x, int d = 0) {
  if (d > p) return 0.0;
  if (d == 0) {
    if (p == 0) {
      // Right end of the knot vector belongs to the last nonempty span.
      if (x == t.back()) {
        int last = static_cast<int>(t.size()) - 2;
        while (last > 0 && t[last] == t[last + 1]) --last;
        return i == last ? 1.0 : 0.0;
      }
      return (t[i] <= x && x < t[i + 1]) ? 1.0 : 0.0;
    }
    double v = 0.0;
    const double d1 = t[i + p] - t[i];
    const double d2 = t[i + p + 1] - t[i + 1];
    if (d1 > 0) v += (x - t[i]) / d1 * cox_de_boor(t, i, p - 1, x);
    if (d2 > 0) v += (t[i + p + 1] - x) / d2 * cox_de_boor(t, i + 1, p - 1, x);
    return v;
  }
  double v = 0.0;
  const double d1 = t[i + p] - t[i];
  const double d2 = t[i + p + 1] - t[i + 1];
  if (d1 > 0) v += p * cox_de_boor(t, i, p - 1, x, d - 1) / d1;
  if (d2 > 0) v -= p * cox_de_boor(t, i + 1, p - 1, x, d - 1) / d2;
  return v;
}

/// Cardinal B-spline of degree p (support [0, p+1]) at x, computed by
/// numerically convolving p+1 unit indicator functions on a fine grid.
inline double convolved_bspline(int p, double x, int samples_per_unit = 4000) {
  const double dx = 1.0 / samples_per_unit;
  std::vector<double> f(static_cast<std::size_t>(samples_per_unit), 1.0);
  for (int k = 0; k < p; ++k) {
    std::vector<double> g(f.size() + samples_per_unit - 1, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (int j = 0; j < samples_per_unit; ++j) g[i + j] += f[i] * dx;
    f = std::move(g);
  }
  // f[i] approximates the spline at (i + (p+1)/2) * dx (midpoint sampling).
  const double pos = x / dx - 0.5 * (p + 1);
  const auto i0 = static_cast<std::size_t>(std::floor(pos));
  const double w = pos - std::floor(pos);
  return (1 - w) * f[i0] + w * f[i0 + 1];
}

inline double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

/// Roots k of cos k cosh k = 1 (clamped-clamped beam), smallest first.
inline std::vector<double> cos_cosh_roots(std::size_t count) {
  const auto f = [](double k) { return std::cos(k) - 1.0 / std::cosh(k); };
  std::vector<double> roots;
  for (double a = 1.0; roots.size() < count; a += 0.05)
    if ((f(a) < 0) != (f(a + 0.05) < 0)) roots.push_back(bisect(f, a, a + 0.05));
  return roots;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(Dense a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) return 0.0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

/// Boundary determinant of u^(8) = k^4 u^(4) on (0, 1) with u, u', u'', u'''
/// vanishing at both ends. General solution:
///   c0 + c1 x + c2 x^2 + c3 x^3 + c4 cos kx + c5 sin kx + c6 e^{k(x-1)} + c7 e^{-kx}.
inline double clamped8_determinant(double k) {
  Dense a(8, std::vector<double>(8, 0.0));
  for (int end = 0; end < 2; ++end) {
    const double x = end;
    for (int d = 0; d < 4; ++d) {
      auto& row = a[static_cast<std::size_t>(end * 4 + d)];
      // polynomial part
      for (int j = 0; j < 4; ++j) {
        if (j < d) continue;
        double c = 1.0;
        for (int q = 0; q < d; ++q) c *= (j - q);
        row[j] = c * std::pow(x, j - d);
      }
      const double kd = std::pow(k, d);
      // d-th derivative of cos and sin
      const double phase = k * x + d * std::numbers::pi / 2;
      row[4] = kd * std::cos(phase);
      row[5] = kd * std::sin(phase);
      row[6] = kd * std::exp(k * (x - 1.0));
      row[7] = kd * ((d % 2) ? -1.0 : 1.0) * std::exp(-k * x);
    }
  }
  // Column scaling keeps the sign pattern meaningful across k.
  for (int j = 4; j < 8; ++j) {
    double s = 0;
    for (int i = 0; i < 8; ++i) s = std::max(s, std::abs(a[i][j]));
    for (int i = 0; i < 8; ++i) a[i][j] /= s;
  }
  return determinant(a);
}

/// Positive buckling eigenvalues lambda = k^4 for m = 2 on (0, 1).
inline std::vector<double> clamped8_eigenvalues(std::size_t count) {
  std::vector<double> out;
  const double step = 0.01;
  for (double k = 0.5; out.size() < count; k += step) {
    const double f0 = clamped8_determinant(k), f1 = clamped8_determinant(k + step);
    if ((f0 < 0) != (f1 < 0)) {
      const double r = bisect(clamped8_determinant, k, k + step);
      out.push_back(std::pow(r, 4));
    }
  }
  return out;
}

/// Positive buckling eigenvalues of -d^2/dx^2 on (0, L) below lambda_max.
/// Writes 2(1 - cos x) - x sin x = 2 sin(x/2) (2 sin(x/2) - x cos(x/2)) with
/// x = k L: the first factor gives x = 2 pi j, the second is bracketed by a
/// fine scan away from its triple zero at the origin.
inline std::vector<double> krein_1d_eigenvalues(double len, double lambda_max) {
  const double x_max = std::sqrt(lambda_max) * len;
  std::vector<double> xs;
  for (int j = 1; 2 * std::numbers::pi * j < x_max; ++j) xs.push_back(2 * std::numbers::pi * j);
  const auto g = [](double x) { return 2 * std::sin(x / 2) - x * std::cos(x / 2); };
  const double step = 0.01;
  for (double a = 0.5; a < x_max; a += step)
    if ((g(a) < 0) != (g(a + step) < 0)) {
      const double r = bisect(g, a, a + step);
      if (r < x_max) xs.push_back(r);
    }
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) out.push_back(x * x / (len * len));
  return out;
}

}  // namespace oracle
