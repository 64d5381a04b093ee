#pragma once

// Discrete forms of the buckling problem for S = (-Delta)^m:
//   a(f, g) = (S f, S g),  b(f, g) = (f, S g),  plus the L^2 mass form.
// For functions vanishing on the boundary together with enough derivatives,
// the multinomial expansion of |xi|^{2k} gives
//   ||(-Delta)^{k/2} u||^2 = sum_{|alpha| = k} k!/alpha! ||d^alpha u||^2,
// so a and b need only mixed partials of one basis function at a time.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "krein/basis.hpp"
#include "krein/linalg.hpp"

namespace krein::forms {

struct MultinomialTerm {
  std::vector<int> alpha;
  std::int64_t weight;  ///< k! / alpha!
};

struct MultinomialWeights {
  int k = 0;
  int n = 0;
  std::vector<MultinomialTerm> terms;  ///< lexicographically descending alpha
};

MultinomialWeights multinomial_weights(int k, int n);

/// Entry (i, j) = sum_{|alpha| = 2m} (2m)!/alpha! (d^alpha b_i, d^alpha b_j).
linalg::SymMatrix assemble_a(const basis::Basis& basis, int m);
/// Entry (i, j) = sum_{|alpha| = m} m!/alpha! (d^alpha b_i, d^alpha b_j).
linalg::SymMatrix assemble_b(const basis::Basis& basis, int m);
linalg::SymMatrix assemble_mass(const basis::Basis& basis);

struct AssembledForms {
  linalg::SymMatrix a;
  linalg::SymMatrix b;
  linalg::SymMatrix mass;
  std::shared_ptr<const basis::Basis> basis;
  int m = 1;

  const basis::DomainSpec& domain() const { return basis->domain(); }
};

AssembledForms assemble_forms(std::shared_ptr<const basis::Basis> basis);

/// Plain-text dump: first line N, then N rows of N space-separated entries.
void write_matrix(std::ostream& os, const linalg::SymMatrix& m);
/// Reads the dump format; the lower triangle is kept.
linalg::SymMatrix read_matrix(std::istream& is);

}  // namespace krein::forms
