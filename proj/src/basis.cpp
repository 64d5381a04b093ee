#include "krein/basis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "krein/errors.hpp"
#include "krein/quadrature.hpp"

namespace krein::basis {

DomainSpec::DomainSpec(Shape shape) : shape_(std::move(shape)) {
  if (const auto* iv = std::get_if<Interval>(&shape_)) {
    if (!std::isfinite(iv->a) || !std::isfinite(iv->b) || !(iv->a < iv->b))
      throw ValidationError("interval requires finite a < b");
    dim_ = 1;
    lo_ = {iv->a};
    hi_ = {iv->b};
    volume_ = iv->b - iv->a;
  } else if (const auto* bx = std::get_if<Box>(&shape_)) {
    if (bx->lo.empty() || bx->lo.size() != bx->hi.size())
      throw ValidationError("box requires lo and hi of equal, positive length");
    volume_ = 1.0;
    for (std::size_t k = 0; k < bx->lo.size(); ++k) {
      if (!std::isfinite(bx->lo[k]) || !std::isfinite(bx->hi[k]) || !(bx->lo[k] < bx->hi[k]))
        throw ValidationError("box requires finite lo < hi on every axis");
      volume_ *= bx->hi[k] - bx->lo[k];
    }
    dim_ = static_cast<int>(bx->lo.size());
    lo_ = bx->lo;
    hi_ = bx->hi;
  } else {
    const auto& cu = std::get<CellUnion>(shape_);
    if (!(cu.h > 0.0) || !std::isfinite(cu.h)) throw ValidationError("cell width h must be > 0");
    if (cu.cells.empty()) throw ValidationError("cell union is empty");
    const std::size_t n = cu.cells.front().size();
    if (n == 0) throw ValidationError("cells need at least one coordinate");
    std::set<std::vector<int>> seen;
    std::vector<int> mn(cu.cells.front()), mx(cu.cells.front());
    for (const auto& c : cu.cells) {
      if (c.size() != n) throw ValidationError("cells have mixed dimensions");
      if (!seen.insert(c).second) throw ValidationError("cell union has duplicate cells");
      for (std::size_t k = 0; k < n; ++k) {
        mn[k] = std::min(mn[k], c[k]);
        mx[k] = std::max(mx[k], c[k]);
      }
    }
    dim_ = static_cast<int>(n);
    volume_ = static_cast<double>(cu.cells.size()) * std::pow(cu.h, static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
      lo_.push_back(mn[k] * cu.h);
      hi_.push_back((mx[k] + 1) * cu.h);
    }
  }
}

AxisSplines::AxisSplines(std::vector<double> knots, int degree, double lo, double hi)
    : knots_(std::move(knots)), p_(degree), lo_(lo), hi_(hi) {
  if (p_ < 0 || static_cast<int>(knots_.size()) < 2 * p_ + 2)
    throw ValidationError("knot vector too short for degree");
  if (!(lo_ < hi_) || lo_ < knots_[static_cast<std::size_t>(p_)] ||
      hi_ > knots_[static_cast<std::size_t>(count())])
    throw ValidationError("axis extent must lie where the splines form a full basis");
  build_gram();
}

int AxisSplines::find_span(double x) const {
  const int last = count() - 1;
  if (x >= knots_[static_cast<std::size_t>(last + 1)]) {
    // Left limit at the right end: last non-empty span.
    int s = last;
    while (s > p_ && knots_[s] == knots_[s + 1]) --s;
    return s;
  }
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  int s = static_cast<int>(it - knots_.begin()) - 1;
  return std::clamp(s, p_, last);
}

void AxisSplines::active_derivatives(int s, double x, int nd, std::vector<double>& ders) const {
  // Piegl & Tiller, "The NURBS Book", algorithm A2.3.
  const int p = p_;
  const auto& u = knots_;
  const int w = p + 1;
  std::vector<double> ndu(static_cast<std::size_t>(w * w));
  std::vector<double> left(w), right(w);
  auto nd_at = [&](int r, int c) -> double& { return ndu[static_cast<std::size_t>(r * w + c)]; };

  nd_at(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - u[s + 1 - j];
    right[j] = u[s + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      nd_at(j, r) = right[r + 1] + left[j - r];
      const double temp = nd_at(r, j - 1) / nd_at(j, r);
      nd_at(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    nd_at(j, j) = saved;
  }

  ders.assign(static_cast<std::size_t>((nd + 1) * w), 0.0);
  auto d_at = [&](int k, int r) -> double& { return ders[static_cast<std::size_t>(k * w + r)]; };
  for (int j = 0; j <= p; ++j) d_at(0, j) = nd_at(j, p);

  const int top = std::min(nd, p);
  std::vector<double> a(static_cast<std::size_t>(2 * w));
  auto a_at = [&](int row, int c) -> double& { return a[static_cast<std::size_t>(row * w + c)]; };
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a_at(0, 0) = 1.0;
    for (int k = 1; k <= top; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a_at(s2, 0) = a_at(s1, 0) / nd_at(pk + 1, rk);
        d = a_at(s2, 0) * nd_at(rk, pk);
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a_at(s2, j) = (a_at(s1, j) - a_at(s1, j - 1)) / nd_at(pk + 1, rk + j);
        d += a_at(s2, j) * nd_at(rk + j, pk);
      }
      if (r <= pk) {
        a_at(s2, k) = -a_at(s1, k - 1) / nd_at(pk + 1, r);
        d += a_at(s2, k) * nd_at(r, pk);
      }
      d_at(k, r) = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= top; ++k) {
    for (int j = 0; j <= p; ++j) d_at(k, j) *= factor;
    factor *= (p - k);
  }
}

double AxisSplines::eval(int i, double x, int d) const {
  if (d > p_) throw DerivativeTooHigh(d, p_);
  if (d < 0) throw ValidationError("negative derivative order");
  if (x < lo_ || x > hi_ || x < support_lo(i) || x > support_hi(i)) return 0.0;
  const int s = find_span(x);
  if (i < s - p_ || i > s) return 0.0;
  std::vector<double> ders;
  active_derivatives(s, x, d, ders);
  return ders[static_cast<std::size_t>(d * (p_ + 1) + (i - (s - p_)))];
}

void AxisSplines::build_gram() {
  const int w = p_ + 1;
  const int band = 2 * p_ + 1;
  const int n = count();
  gram_.assign(static_cast<std::size_t>(w * w) * static_cast<std::size_t>(n * band), 0.0);
  // p+1 Gauss points per span integrate degree-2p products exactly.
  const quad::Rule rule = quad::gauss_legendre(p_ + 1);
  std::vector<double> ders;
  for (int s = p_; s < n; ++s) {
    const double x0 = std::max(knots_[s], lo_);
    const double x1 = std::min(knots_[s + 1], hi_);
    if (!(x1 > x0)) continue;
    const double half = 0.5 * (x1 - x0);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double x = x0 + half * (rule.nodes[q] + 1.0);
      const double wq = half * rule.weights[q];
      active_derivatives(s, x, p_, ders);
      for (int d1 = 0; d1 <= p_; ++d1) {
        for (int d2 = 0; d2 <= p_; ++d2) {
          const std::size_t block =
              static_cast<std::size_t>(d1 * w + d2) * static_cast<std::size_t>(n * band);
          for (int r1 = 0; r1 <= p_; ++r1) {
            const double v1 = wq * ders[static_cast<std::size_t>(d1 * w + r1)];
            if (v1 == 0.0) continue;
            const int i = s - p_ + r1;
            for (int r2 = 0; r2 <= p_; ++r2) {
              const int j = s - p_ + r2;
              gram_[block + static_cast<std::size_t>(i * band + (j - i + p_))] +=
                  v1 * ders[static_cast<std::size_t>(d2 * w + r2)];
            }
          }
        }
      }
    }
  }
}

double AxisSplines::gram(int i, int j, int d1, int d2) const {
  if (d1 > p_) throw DerivativeTooHigh(d1, p_);
  if (d2 > p_) throw DerivativeTooHigh(d2, p_);
  if (d1 < 0 || d2 < 0) throw ValidationError("negative derivative order");
  if (std::abs(i - j) > p_) return 0.0;
  // Read one triangle so that gram(i, j, d1, d2) == gram(j, i, d2, d1) exactly.
  if (d1 > d2 || (d1 == d2 && i > j)) {
    std::swap(i, j);
    std::swap(d1, d2);
  }
  const int w = p_ + 1, band = 2 * p_ + 1;
  const std::size_t block =
      static_cast<std::size_t>(d1 * w + d2) * static_cast<std::size_t>(count() * band);
  return gram_[block + static_cast<std::size_t>(i * band + (j - i + p_))];
}

Basis::Basis(DomainSpec domain, int degree, int m, int vanishing, KnotLayout layout,
             std::vector<AxisSplines> axes, std::vector<int> indices)
    : domain_(std::move(domain)),
      degree_(degree),
      m_(m),
      vanishing_(vanishing),
      layout_(layout),
      axes_(std::move(axes)),
      indices_(std::move(indices)) {}

bool Basis::supports_overlap(std::size_t i, std::size_t j) const {
  const auto a = multi_index(i);
  const auto b = multi_index(j);
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > degree_) return false;
  return true;
}

namespace {

std::vector<double> clamped_knots(double lo, double hi, int cells, int p) {
  std::vector<double> t;
  const double h = (hi - lo) / cells;
  for (int k = 0; k < p; ++k) t.push_back(lo);
  for (int k = 0; k <= cells; ++k) t.push_back(k == cells ? hi : lo + k * h);
  for (int k = 0; k < p; ++k) t.push_back(hi);
  return t;
}

std::vector<double> uniform_knots(double lo, double hi, int cells, int p) {
  std::vector<double> t;
  const double h = (hi - lo) / cells;
  for (int k = 0; k <= cells + 2 * p; ++k) t.push_back(lo + (k - p) * h);
  return t;
}

}  // namespace

Basis build_basis(const DomainSpec& dom, const BasisSpec& spec) {
  const int p = spec.degree;
  if (spec.m < 1) throw ValidationError("order m must be >= 1");
  if (p < 1) throw ValidationError("degree must be >= 1");
  if (p < 2 * spec.m) throw ValidationError("degree < 2m: splines would not lie in W^{2m}_0");
  if (spec.cells_per_axis < 1) throw ValidationError("cells per axis must be >= 1");
  int vanishing = spec.boundary_vanishing.value_or(2 * spec.m);
  if (vanishing < 0 || vanishing > p)
    throw ValidationError("boundary vanishing order must lie in [0, degree]");

  KnotLayout layout = spec.knots;
  if (layout == KnotLayout::Auto)
    layout = dom.is_cell_union() ? KnotLayout::Uniform : KnotLayout::Clamped;
  if (layout == KnotLayout::Clamped && dom.is_cell_union())
    throw ValidationError("cell unions require the uniform knot layout");

  const int n = dom.dimension();
  std::vector<int> cells(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    if (const auto* cu = std::get_if<CellUnion>(&dom.shape())) {
      const double extent = (dom.hi()[a] - dom.lo()[a]) / cu->h;
      cells[a] = static_cast<int>(std::lround(extent)) * spec.cells_per_axis;
    } else {
      cells[a] = spec.cells_per_axis;
    }
  }

  std::vector<AxisSplines> axes;
  for (int a = 0; a < n; ++a) {
    auto knots = layout == KnotLayout::Clamped
                     ? clamped_knots(dom.lo()[a], dom.hi()[a], cells[a], p)
                     : uniform_knots(dom.lo()[a], dom.hi()[a], cells[a], p);
    axes.emplace_back(std::move(knots), p, dom.lo()[a], dom.hi()[a]);
  }

  // Per-axis candidate ranges [first, last]; cell unions filter further below.
  std::vector<int> first(n), last(n);
  for (int a = 0; a < n; ++a) {
    const int cnt = axes[a].count();
    if (layout == KnotLayout::Clamped) {
      first[a] = vanishing;
      last[a] = cnt - 1 - vanishing;
    } else if (vanishing > 0) {
      first[a] = p;
      last[a] = cells[a] - 1;
    } else {
      first[a] = 0;
      last[a] = cnt - 1;
    }
  }
  const int effective_vanishing =
      (layout == KnotLayout::Uniform && vanishing > 0) ? p : vanishing;

  // Subcell membership for cell unions (uniform layout, cell-aligned knots).
  std::vector<char> inside;
  std::vector<int> stride(n, 1);
  const auto* cu = std::get_if<CellUnion>(&dom.shape());
  if (cu != nullptr) {
    for (int a = n - 2; a >= 0; --a) stride[a] = stride[a + 1] * cells[a + 1];
    std::size_t total = 1;
    for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(cells[a]);
    inside.assign(total, 0);
    const int r = spec.cells_per_axis;
    for (const auto& c : cu->cells) {
      std::vector<int> base(n);
      for (int a = 0; a < n; ++a)
        base[a] = (c[a] - static_cast<int>(std::lround(dom.lo()[a] / cu->h))) * r;
      std::vector<int> off(n, 0);
      while (true) {
        std::size_t idx = 0;
        for (int a = 0; a < n; ++a) idx += static_cast<std::size_t>((base[a] + off[a]) * stride[a]);
        inside[idx] = 1;
        int a = n - 1;
        while (a >= 0 && ++off[a] == r) off[a--] = 0;
        if (a < 0) break;
      }
    }
  }

  const auto keep = [&](const std::vector<int>& mi) {
    if (cu == nullptr) return true;
    // Support of spline i covers subcells i-p .. i on each axis.
    std::vector<int> lo(n), hi(n), k(n);
    for (int a = 0; a < n; ++a) {
      lo[a] = mi[a] - p;
      hi[a] = mi[a];
    }
    k = lo;
    bool any = false, all = true;
    while (true) {
      bool in_range = true;
      std::size_t idx = 0;
      for (int a = 0; a < n; ++a) {
        if (k[a] < 0 || k[a] >= cells[a]) {
          in_range = false;
          break;
        }
        idx += static_cast<std::size_t>(k[a] * stride[a]);
      }
      const bool member = in_range && inside[idx] != 0;
      any = any || member;
      all = all && member;
      int a = n - 1;
      while (a >= 0 && ++k[a] > hi[a]) {
        k[a] = lo[a];
        --a;
      }
      if (a < 0) break;
    }
    return vanishing > 0 ? all : any;
  };

  std::vector<int> indices;
  for (int a = 0; a < n; ++a)
    if (first[a] > last[a]) throw EmptyBasis("grid too coarse: no interior spline exists");
  std::vector<int> mi(first);
  while (true) {
    if (keep(mi)) indices.insert(indices.end(), mi.begin(), mi.end());
    int a = n - 1;
    while (a >= 0 && ++mi[a] > last[a]) {
      mi[a] = first[a];
      --a;
    }
    if (a < 0) break;
  }
  if (indices.empty()) throw EmptyBasis("grid too coarse: no interior spline exists");

  return Basis(dom, p, spec.m, effective_vanishing, layout, std::move(axes), std::move(indices));
}

double spline_inner(const Basis& basis, std::size_t i, std::size_t j, std::span<const int> d1,
                    std::span<const int> d2) {
  const int n = basis.dimension();
  if (static_cast<int>(d1.size()) != n || static_cast<int>(d2.size()) != n)
    throw ValidationError("derivative multi-index has wrong dimension");
  for (int a = 0; a < n; ++a) {
    if (d1[a] > basis.degree()) throw DerivativeTooHigh(d1[a], basis.degree());
    if (d2[a] > basis.degree()) throw DerivativeTooHigh(d2[a], basis.degree());
  }
  const auto mi = basis.multi_index(i);
  const auto mj = basis.multi_index(j);
  double v = 1.0;
  for (int a = 0; a < n && v != 0.0; ++a) v *= basis.axis(a).gram(mi[a], mj[a], d1[a], d2[a]);
  return v;
}

double eval_basis(const Basis& basis, std::size_t i, std::span<const double> x,
                  std::span<const int> d) {
  const int n = basis.dimension();
  if (static_cast<int>(x.size()) != n || static_cast<int>(d.size()) != n)
    throw ValidationError("point or derivative has wrong dimension");
  for (int a = 0; a < n; ++a)
    if (d[a] > basis.degree()) throw DerivativeTooHigh(d[a], basis.degree());
  const auto mi = basis.multi_index(i);
  double v = 1.0;
  for (int a = 0; a < n && v != 0.0; ++a) v *= basis.axis(a).eval(mi[a], x[a], d[a]);
  return v;
}

double eval_combination(const Basis& basis, std::span<const double> coeffs,
                        std::span<const double> x, std::span<const int> d) {
  if (coeffs.size() != basis.size()) throw ValidationError("coefficient count mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0.0) s += coeffs[i] * eval_basis(basis, i, x, d);
  return s;
}

}  // namespace krein::basis
