#pragma once

// Conforming trial spaces of tensor-product B-splines.
//
// Two knot layouts are supported per axis:
//   * Clamped: open knot vector over the axis extent. Dropping the first and
//     last k functions leaves exactly the splines whose derivatives of order
//     < k vanish on the boundary.
//   * Uniform: equally spaced knots extended past the domain. A spline is
//     kept only if its whole support lies inside the closed domain; such a
//     spline vanishes with derivatives up to p-1 on the boundary.
// Cell unions always use the uniform layout; intervals and boxes default to
// the clamped one.

#include <optional>
#include <utility>
#include <span>
#include <variant>
#include <vector>

namespace krein::basis {

struct Interval {
  double a = 0.0;
  double b = 1.0;
};

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Union of axis-aligned cells [k*h, (k+1)*h] indexed by integer tuples.
struct CellUnion {
  double h = 1.0;
  std::vector<std::vector<int>> cells;
};

class DomainSpec {
 public:
  using Shape = std::variant<Interval, Box, CellUnion>;

  /// Validates the shape; throws ValidationError.
  explicit DomainSpec(Shape shape);

  static DomainSpec interval(double a, double b) { return DomainSpec(Interval{a, b}); }
  static DomainSpec box(std::vector<double> lo, std::vector<double> hi) {
    return DomainSpec(Box{std::move(lo), std::move(hi)});
  }
  static DomainSpec cell_union(double h, std::vector<std::vector<int>> cells) {
    return DomainSpec(CellUnion{h, std::move(cells)});
  }

  const Shape& shape() const noexcept { return shape_; }
  int dimension() const noexcept { return dim_; }
  double volume() const noexcept { return volume_; }
  /// Axis-aligned bounding box.
  const std::vector<double>& lo() const noexcept { return lo_; }
  const std::vector<double>& hi() const noexcept { return hi_; }

  bool is_cell_union() const noexcept { return std::holds_alternative<CellUnion>(shape_); }

 private:
  Shape shape_;
  int dim_ = 1;
  double volume_ = 0.0;
  std::vector<double> lo_, hi_;
};

enum class KnotLayout { Auto, Clamped, Uniform };

struct BasisSpec {
  int degree = 3;
  /// Knot spans per axis for intervals and boxes; subdivisions of each cell
  /// per axis for cell unions.
  int cells_per_axis = 32;
  int m = 1;
  KnotLayout knots = KnotLayout::Auto;
  /// Derivative orders 0..k-1 that must vanish on the boundary; defaults to
  /// 2m (membership in the closure of C_0^inf in W^{2m}). Zero keeps every
  /// spline meeting the domain (diagnostic, not conforming).
  std::optional<int> boundary_vanishing;
};

/// Splines of one axis over a nondecreasing knot vector t. The extent
/// [lo, hi] must lie inside [t_p, t_count], where the splines sum to one.
class AxisSplines {
 public:
  AxisSplines(std::vector<double> knots, int degree, double lo, double hi);

  int degree() const noexcept { return p_; }
  const std::vector<double>& knots() const noexcept { return knots_; }
  /// Number of splines defined by the knot vector.
  int count() const noexcept { return static_cast<int>(knots_.size()) - p_ - 1; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  double support_lo(int i) const { return knots_[i]; }
  double support_hi(int i) const { return knots_[i + p_ + 1]; }

  /// d-th derivative of spline i at x; zero outside [lo, hi] and outside the
  /// support. Spans are half-open except at hi, where the left limit is used.
  double eval(int i, double x, int d) const;

  /// Exact integral of b_i^(d1) b_j^(d2) over the axis extent [lo, hi].
  double gram(int i, int j, int d1, int d2) const;

  /// Values and derivatives 0..nd of the p+1 splines active on span s, at x.
  /// ders[k * (p+1) + r] is the k-th derivative of spline s - p + r.
  void active_derivatives(int s, double x, int nd, std::vector<double>& ders) const;

  /// Span index s with knots[s] <= x < knots[s+1], clamped to the valid range.
  int find_span(double x) const;

 private:
  void build_gram();

  std::vector<double> knots_;
  int p_;
  double lo_, hi_;
  // gram_[(d1 * (p+1) + d2) * count * (2p+1) + i * (2p+1) + (j - i + p)]
  std::vector<double> gram_;
};

class Basis {
 public:
  Basis(DomainSpec domain, int degree, int m, int vanishing, KnotLayout layout,
        std::vector<AxisSplines> axes, std::vector<int> indices);

  int dimension() const noexcept { return domain_.dimension(); }
  int degree() const noexcept { return degree_; }
  int m() const noexcept { return m_; }
  /// Derivative orders 0..k-1 of every retained function vanish on the boundary.
  int boundary_vanishing() const noexcept { return vanishing_; }
  KnotLayout layout() const noexcept { return layout_; }
  const DomainSpec& domain() const noexcept { return domain_; }
  const AxisSplines& axis(int a) const { return axes_[static_cast<std::size_t>(a)]; }

  std::size_t size() const noexcept { return indices_.size() / static_cast<std::size_t>(dimension()); }
  /// Per-axis spline indices of function i.
  std::span<const int> multi_index(std::size_t i) const {
    const auto n = static_cast<std::size_t>(dimension());
    return {indices_.data() + i * n, n};
  }

  bool supports_overlap(std::size_t i, std::size_t j) const;

 private:
  DomainSpec domain_;
  int degree_;
  int m_;
  int vanishing_;
  KnotLayout layout_;
  std::vector<AxisSplines> axes_;
  std::vector<int> indices_;
};

/// Throws ValidationError for p < 2m, EmptyBasis when no function survives.
Basis build_basis(const DomainSpec& dom, const BasisSpec& spec);

/// Exact integral of d1-derivative of b_i times d2-derivative of b_j.
/// Factorizes across axes; throws DerivativeTooHigh for orders above p.
double spline_inner(const Basis& basis, std::size_t i, std::size_t j,
                    std::span<const int> d1, std::span<const int> d2);

/// Pointwise partial derivative d of b_i at x (zero outside its support).
double eval_basis(const Basis& basis, std::size_t i, std::span<const double> x,
                  std::span<const int> d);

/// Sum over i of coeffs[i] * d-derivative of b_i at x.
double eval_combination(const Basis& basis, std::span<const double> coeffs,
                        std::span<const double> x, std::span<const int> d);

}  // namespace krein::basis
