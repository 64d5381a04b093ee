#include "krein/forms.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "krein/errors.hpp"

namespace krein::forms {

MultinomialWeights multinomial_weights(int k, int n) {
  if (k < 1 || n < 1) throw ValidationError("multinomial_weights: need k >= 1 and n >= 1");
  MultinomialWeights out{k, n, {}};
  std::vector<std::int64_t> fact(static_cast<std::size_t>(k) + 1, 1);
  for (int i = 1; i <= k; ++i) fact[i] = fact[i - 1] * i;

  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  // Enumerate compositions of k into n parts recursively.
  auto rec = [&](auto&& self, int axis, int remaining) -> void {
    if (axis == n - 1) {
      alpha[axis] = remaining;
      std::int64_t w = fact[k];
      for (int a : alpha) w /= fact[a];
      out.terms.push_back({alpha, w});
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      alpha[axis] = v;
      self(self, axis + 1, remaining - v);
    }
  };
  rec(rec, 0, k);
  return out;
}

namespace {

linalg::SymMatrix assemble_weighted(const basis::Basis& basis, const MultinomialWeights& w) {
  const std::size_t n = basis.size();
  linalg::SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (!basis.supports_overlap(i, j)) continue;
      double s = 0.0;
      for (const auto& t : w.terms)
        s += static_cast<double>(t.weight) * basis::spline_inner(basis, i, j, t.alpha, t.alpha);
      out(i, j) = s;
    }
  }
  return out;
}

}  // namespace

linalg::SymMatrix assemble_a(const basis::Basis& basis, int m) {
  if (2 * m > basis.degree()) throw DerivativeTooHigh(2 * m, basis.degree());
  return assemble_weighted(basis, multinomial_weights(2 * m, basis.dimension()));
}

linalg::SymMatrix assemble_b(const basis::Basis& basis, int m) {
  if (m > basis.degree()) throw DerivativeTooHigh(m, basis.degree());
  return assemble_weighted(basis, multinomial_weights(m, basis.dimension()));
}

linalg::SymMatrix assemble_mass(const basis::Basis& basis) {
  MultinomialWeights w{0, basis.dimension(), {}};
  w.terms.push_back({std::vector<int>(static_cast<std::size_t>(basis.dimension()), 0), 1});
  return assemble_weighted(basis, w);
}

AssembledForms assemble_forms(std::shared_ptr<const basis::Basis> basis) {
  if (!basis) throw ValidationError("assemble_forms: null basis");
  const int m = basis->m();
  AssembledForms f;
  f.a = assemble_a(*basis, m);
  f.b = assemble_b(*basis, m);
  f.mass = assemble_mass(*basis);
  f.basis = std::move(basis);
  f.m = m;
  return f;
}

void write_matrix(std::ostream& os, const linalg::SymMatrix& m) {
  const std::size_t n = m.order();
  os << n << '\n';
  char buf[40];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j > 0) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

linalg::SymMatrix read_matrix(std::istream& is) {
  std::size_t n = 0;
  if (!(is >> n) || n == 0) throw ValidationError("matrix dump: bad order line");
  linalg::SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double v;
      if (!(is >> v))
        throw ValidationError("matrix dump: missing entry (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      if (j <= i) m(i, j) = v;
    }
  }
  return m;
}

}  // namespace krein::forms
