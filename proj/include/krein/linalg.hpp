#pragma once

// Dense symmetric linear algebra: Cholesky, Bunch-Kaufman LDL^T inertia,
// cyclic Jacobi, and the symmetric-definite pencil solver built on them.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace krein::linalg {

/// Row-major dense matrix. Used for triangular factors and eigenvector sets
/// (one eigenvector per column).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> column(std::size_t j) const;
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  static Matrix identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Symmetric matrix holding only its lower triangle (packed by rows).
/// Element access with either index order reaches the same storage slot,
/// so symmetry holds by construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t order, double fill = 0.0)
      : order_(order), data_(order * (order + 1) / 2, fill) {}

  std::size_t order() const noexcept { return order_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[slot(i, j)]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[slot(i, j)]; }

  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> d);
  /// Lower triangle of `full` is taken; the upper triangle is ignored.
  static SymMatrix from_lower(const Matrix& full);

  Matrix to_full() const;

  double max_abs() const;
  double trace() const;
  bool all_finite() const;

  /// this - lambda * other
  SymMatrix shifted(const SymMatrix& other, double lambda) const;

  std::vector<double> multiply(std::span<const double> x) const;
  double quadratic_form(std::span<const double> x) const;

 private:
  static std::size_t slot(std::size_t i, std::size_t j) noexcept {
    return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
  }

  std::size_t order_ = 0;
  std::vector<double> data_;
};

/// Signature of a symmetric matrix as (negative, zero, positive) counts.
struct Inertia {
  std::size_t n_minus = 0;
  std::size_t n_zero = 0;
  std::size_t n_plus = 0;

  std::size_t order() const noexcept { return n_minus + n_zero + n_plus; }
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Eigenvalues in nondecreasing order; `vectors` column j belongs to values[j].
struct EigDecomp {
  std::vector<double> values;
  Matrix vectors;
};

/// Lower-triangular L with M = L L^T. Throws NotPositiveDefinite on a
/// nonpositive pivot.
Matrix cholesky(const SymMatrix& m);

/// Default singularity threshold for the inertia of m: 1e-10 * max|m_ij|.
double default_zero_tol(const SymMatrix& m);

/// Inertia via symmetric-pivoted LDL^T (Bunch-Kaufman 1x1/2x2 pivots).
/// Pivots of magnitude <= zero_tol are counted as zero.
Inertia ldlt_inertia(const SymMatrix& m, double zero_tol);

inline constexpr int kDefaultJacobiSweeps = 50;

/// Full eigendecomposition by cyclic Jacobi rotations.
/// Throws NoConvergence if the sweep budget runs out.
EigDecomp sym_eig(const SymMatrix& m, int max_sweeps = kDefaultJacobiSweeps);

/// A x = lambda B x for B positive definite, reduced through B = L L^T to the
/// standard problem on L^{-1} A L^{-T}. Returned vectors are B-orthonormal.
EigDecomp gen_eig(const SymMatrix& a, const SymMatrix& b);

struct PencilCount {
  std::size_t count = 0;   ///< pencil eigenvalues strictly below lambda
  std::size_t n_zero = 0;  ///< > 0 when lambda sits on an eigenvalue
  bool on_eigenvalue() const noexcept { return n_zero > 0; }
};

/// Number of eigenvalues of A x = mu B x below lambda, read off the inertia
/// of A - lambda B (Sylvester's law). zero_tol defaults to
/// default_zero_tol(A - lambda B).
PencilCount pencil_count_below(const SymMatrix& a, const SymMatrix& b, double lambda,
                               std::optional<double> zero_tol = std::nullopt);

}  // namespace krein::linalg
