#pragma once

// Closed-form eigenvalue-counting constants for (-Delta)^m on a set of
// finite volume in R^n, and a quadrature route to the Krein constant.
//
//   Weyl leading term:   (2 pi)^-n v_n |Omega| lambda^{n/2m}
//   Krein bound:         (2 pi)^-n v_n |Omega| (1 + 2m/(2m+n))^{n/2m} lambda^{n/2m}
//   Laptev (Friedrichs): (2 pi)^-n v_n |Omega| (1 + 2m/n)^{n/2m} lambda^{n/2m}
//
// The Krein constant v_n (1 + 2m/(2m+n))^{n/2m} is the minimum over alpha > 0 of
//   g(alpha) = alpha^-1 * integral over R^n of [alpha - |xi|^{4m} + |xi|^{2m}]_+.

namespace krein::bounds {

struct BoundParams {
  int n = 1;
  int m = 1;
  double volume = 1.0;
  double v_n = 2.0;

  /// Fills v_n from n; throws ValidationError on invalid inputs.
  static BoundParams make(int n, int m, double volume);
};

/// log Gamma(x) for x > 0 by the Lanczos approximation (g = 7, 9 terms).
double log_gamma(double x);

/// pi^{n/2} / Gamma((n+2)/2).
double unit_ball_volume(int n);

double krein_constant(int n, int m);
double laptev_constant(int n, int m);

double krein_bound(const BoundParams& params, double lambda);
double laptev_friedrichs_bound(const BoundParams& params, double lambda);
double weyl_leading(const BoundParams& params, double lambda);

/// g(alpha) evaluated by adaptive Simpson on the radial integral.
double minimization_objective(int n, int m, double alpha);

struct ConstantMinimum {
  double minimum = 0.0;
  double alpha_star = 0.0;  ///< diagnostic only
};

/// Golden-section minimization of g over log(alpha) in [log alpha_lo, log alpha_hi].
/// Throws MinimizationAtBoundary if the minimizer sits on a bracket edge.
ConstantMinimum bound_constant_numeric(int n, int m, double alpha_lo = 1e-4,
                                       double alpha_hi = 1e4);

}  // namespace krein::bounds
