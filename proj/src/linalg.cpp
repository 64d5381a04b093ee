#include "krein/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "krein/errors.hpp"

namespace krein::linalg {

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

SymMatrix SymMatrix::from_lower(const Matrix& full) {
  SymMatrix m(full.rows());
  for (std::size_t i = 0; i < full.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = full(i, j);
  return m;
}

Matrix SymMatrix::to_full() const {
  Matrix f(order_, order_);
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j <= i; ++j) f(i, j) = f(j, i) = (*this)(i, j);
  return f;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < order_; ++i) t += (*this)(i, i);
  return t;
}

bool SymMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

SymMatrix SymMatrix::shifted(const SymMatrix& other, double lambda) const {
  if (other.order_ != order_) throw ValidationError("shifted: order mismatch");
  SymMatrix r(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= lambda * other.data_[k];
  return r;
}

std::vector<double> SymMatrix::multiply(std::span<const double> x) const {
  if (x.size() != order_) throw ValidationError("multiply: size mismatch");
  std::vector<double> y(order_, 0.0);
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double a = (*this)(i, j);
      y[i] += a * x[j];
      y[j] += a * x[i];
    }
    y[i] += (*this)(i, i) * x[i];
  }
  return y;
}

double SymMatrix::quadratic_form(std::span<const double> x) const {
  const auto y = multiply(x);
  return std::inner_product(y.begin(), y.end(), x.begin(), 0.0);
}

Matrix cholesky(const SymMatrix& m) {
  const std::size_t n = m.order();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw NotPositiveDefinite(j, d);
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      const auto li = l.row(i);
      const auto lj = l.row(j);
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
      l(i, j) = s / ljj;
    }
  }
  return l;
}

double default_zero_tol(const SymMatrix& m) { return 1e-10 * m.max_abs(); }

namespace {

void classify(double pivot, double zero_tol, Inertia& in) {
  if (!std::isfinite(pivot)) throw BreakdownError("non-finite pivot in LDL^T");
  if (std::abs(pivot) <= zero_tol)
    ++in.n_zero;
  else if (pivot < 0.0)
    ++in.n_minus;
  else
    ++in.n_plus;
}

void symmetric_swap(Matrix& a, std::size_t p, std::size_t q) {
  if (p == q) return;
  const std::size_t n = a.rows();
  for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(q, j));
  for (std::size_t i = 0; i < n; ++i) std::swap(a(i, p), a(i, q));
}

}  // namespace

Inertia ldlt_inertia(const SymMatrix& m, double zero_tol) {
  if (zero_tol < 0.0) throw ValidationError("ldlt_inertia: zero_tol must be >= 0");
  if (!m.all_finite()) throw BreakdownError("ldlt_inertia: non-finite entries");

  // Growth-bounding constant of Bunch and Kaufman.
  const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;
  const std::size_t n = m.order();
  Matrix a = m.to_full();
  Inertia in;

  std::size_t k = 0;
  while (k < n) {
    double colmax = 0.0;
    std::size_t r = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > colmax) {
        colmax = std::abs(a(i, k));
        r = i;
      }
    }
    const double akk = std::abs(a(k, k));

    if (std::max(akk, colmax) <= zero_tol) {
      // Numerically null column: a zero pivot with nothing to eliminate.
      ++in.n_zero;
      ++k;
      continue;
    }

    bool two_by_two = false;
    if (akk < alpha * colmax) {
      double rowmax = 0.0;
      for (std::size_t j = k; j < n; ++j)
        if (j != r) rowmax = std::max(rowmax, std::abs(a(r, j)));
      if (akk * rowmax >= alpha * colmax * colmax) {
        // keep the 1x1 pivot at k
      } else if (std::abs(a(r, r)) >= alpha * rowmax) {
        symmetric_swap(a, k, r);
      } else {
        symmetric_swap(a, k + 1, r);
        two_by_two = true;
      }
    }

    if (!two_by_two) {
      const double d = a(k, k);
      classify(d, zero_tol, in);
      if (std::abs(d) > zero_tol) {
        for (std::size_t i = k + 1; i < n; ++i) {
          const double f = a(i, k) / d;
          if (f == 0.0) continue;
          for (std::size_t j = k + 1; j <= i; ++j) a(i, j) -= f * a(j, k);
        }
        for (std::size_t i = k + 1; i < n; ++i)
          for (std::size_t j = k + 1; j < i; ++j) a(j, i) = a(i, j);
      }
      ++k;
      continue;
    }

    const double e11 = a(k, k), e21 = a(k + 1, k), e22 = a(k + 1, k + 1);
    const double det = e11 * e22 - e21 * e21;
    if (!std::isfinite(det) || det == 0.0)
      throw BreakdownError("singular 2x2 pivot block at " + std::to_string(k));
    const double mid = 0.5 * (e11 + e22);
    const double rad = std::hypot(0.5 * (e11 - e22), e21);
    classify(mid - rad, zero_tol, in);
    classify(mid + rad, zero_tol, in);

    const double i11 = e22 / det, i21 = -e21 / det, i22 = e11 / det;
    for (std::size_t i = k + 2; i < n; ++i) {
      const double x1 = a(i, k), x2 = a(i, k + 1);
      const double w1 = i11 * x1 + i21 * x2;
      const double w2 = i21 * x1 + i22 * x2;
      for (std::size_t j = k + 2; j <= i; ++j) a(i, j) -= w1 * a(j, k) + w2 * a(j, k + 1);
    }
    for (std::size_t i = k + 2; i < n; ++i)
      for (std::size_t j = k + 2; j < i; ++j) a(j, i) = a(i, j);
    k += 2;
  }
  return in;
}

EigDecomp sym_eig(const SymMatrix& m, int max_sweeps) {
  const std::size_t n = m.order();
  Matrix a = m.to_full();
  Matrix v = Matrix::identity(n);

  const auto rotate = [&](std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    const double diff = a(q, q) - a(p, p);
    double t;
    if (std::abs(diff) + 100.0 * std::abs(apq) == std::abs(diff)) {
      t = apq / diff;
    } else {
      const double theta = 0.5 * diff / apq;
      t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
      if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const double tau = s / (1.0 + c);
    a(p, p) -= t * apq;
    a(q, q) += t * apq;
    a(p, q) = a(q, p) = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == p || r == q) continue;
      const double g = a(r, p), h = a(r, q);
      a(r, p) = a(p, r) = g - s * (h + g * tau);
      a(r, q) = a(q, r) = h + s * (g - h * tau);
    }
    for (std::size_t r = 0; r < n; ++r) {
      const double g = v(r, p), h = v(r, q);
      v(r, p) = g - s * (h + g * tau);
      v(r, q) = h + s * (g - h * tau);
    }
  };

  bool converged = n <= 1;
  for (int sweep = 1; sweep <= max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(a(p, q));
    if (off == 0.0) {
      converged = true;
      break;
    }
    const double thresh = sweep < 4 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = 100.0 * std::abs(a(p, q));
        // Off-diagonal negligible relative to both diagonals: drop it.
        if (sweep > 4 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = a(q, p) = 0.0;
        } else if (std::abs(a(p, q)) > thresh) {
          rotate(p, q);
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(a(p, q));
    if (off != 0.0)
      throw NoConvergence("Jacobi did not converge in " + std::to_string(max_sweeps) +
                          " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  EigDecomp out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

EigDecomp gen_eig(const SymMatrix& a, const SymMatrix& b) {
  if (a.order() != b.order()) throw ValidationError("gen_eig: order mismatch");
  const std::size_t n = a.order();
  const Matrix l = cholesky(b);

  // x = L^{-1} A, column by column (A symmetric so rows of A serve as columns).
  Matrix x = a.to_full();
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x(i, col);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, col);
      x(i, col) = s / l(i, i);
    }
  }
  // C = L^{-1} x^T, whose columns are solves against rows of x.
  Matrix c(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x(col, i);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * c(k, col);
      c(i, col) = s / l(i, i);
    }
  }
  SymMatrix reduced(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) reduced(i, j) = 0.5 * (c(i, j) + c(j, i));

  EigDecomp ed = sym_eig(reduced);
  // Back-transform y -> L^{-T} y.
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t ii = n; ii-- > 0;) {
      double s = ed.vectors(ii, col);
      for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * ed.vectors(k, col);
      ed.vectors(ii, col) = s / l(ii, ii);
    }
  }
  return ed;
}

PencilCount pencil_count_below(const SymMatrix& a, const SymMatrix& b, double lambda,
                               std::optional<double> zero_tol) {
  const SymMatrix shifted = a.shifted(b, lambda);
  const double tol = zero_tol.value_or(default_zero_tol(shifted));
  const Inertia in = ldlt_inertia(shifted, tol);
  return {in.n_minus, in.n_zero};
}

}  // namespace krein::linalg
