#pragma once

#include <functional>
#include <vector>

namespace krein::quad {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; exact for polynomials of degree 2n-1.
Rule gauss_legendre(int n);

/// Adaptive Simpson on [a, b] to the given absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 50);

}  // namespace krein::quad
