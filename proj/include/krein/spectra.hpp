#pragma once

// Positive Krein spectrum through the buckling pencil A x = lambda B x,
// Friedrichs spectrum through B x = mu M x, counting curves by inertia, and
// closed-form one-dimensional oracles.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "krein/bounds.hpp"
#include "krein/forms.hpp"
#include "krein/linalg.hpp"

namespace krein::spectra {

enum class SpectrumKind { KreinBuckling, Friedrichs };

struct SpectrumResult {
  SpectrumKind kind = SpectrumKind::KreinBuckling;
  std::vector<double> eigenvalues;  ///< ascending, strictly positive
  linalg::Matrix vectors;           ///< column j pairs with eigenvalues[j]
  std::size_t trial_size = 0;
};

/// Every discrete eigenvalue bounds the matching buckling eigenvalue from
/// above, so discrete counts are lower bounds for the true counts.
/// Requires a basis vanishing to order 2m on the boundary.
SpectrumResult krein_positive_spectrum(const forms::AssembledForms& forms);

/// Requires a basis vanishing to order m on the boundary.
SpectrumResult friedrichs_spectrum(const forms::AssembledForms& forms);

struct CountingCurve {
  std::vector<double> lambdas;
  std::vector<std::size_t> counts;
  std::vector<bool> on_eigenvalue;  ///< lambda hit a discrete eigenvalue
  std::vector<double> bound_values;
  std::vector<double> weyl_values;
  std::optional<std::vector<std::size_t>> friedrichs_counts;
  std::size_t trial_size = 0;
};

/// Counts via the inertia of A - lambda B (and B - lambda M for Friedrichs).
CountingCurve counting_curve(const forms::AssembledForms& forms, std::span<const double> lambdas,
                             const bounds::BoundParams& params, bool with_friedrichs);

/// lo, lo*ratio, lo*ratio^2, ... while strictly below hi.
std::vector<double> geometric_grid(double lo, double hi, double ratio);

/// Geometric grid from lambda_1 / 2 up to (excluding) the N/2-th discrete
/// eigenvalue; the upper discrete eigenvalues are not resolved.
std::vector<double> default_lambda_grid(const SpectrumResult& krein, double ratio = 1.2);

/// Positive Krein eigenvalues of -d^2/dx^2 on (a, b): lambda = k^2 with
/// f(k) = 2(1 - cos kL) - kL sin kL = 0, L = b - a. Roots come from the
/// families kL = 2 pi j and tan(kL/2) = kL/2, interleaved.
std::vector<double> oracle_1d_krein(double a, double b, std::size_t how_many);

/// All oracle eigenvalues strictly below lambda.
std::vector<double> oracle_1d_krein_below(double a, double b, double lambda);

/// One-dimensional, m = 1: reconstructs v = -u''/lambda from the coefficients
/// and measures how far v is from the Krein boundary condition
/// v'(a) = v'(b) = (v(b) - v(a))/(b - a). Traces are one-sided values at
/// distance h/100 from the ends, Richardson-extrapolated. The result is
/// scaled by (b - a) / max|v| so it is invariant under rescaling u.
double krein_bc_check(const basis::Basis& basis, double lambda, std::span<const double> u);
double krein_bc_check(const forms::AssembledForms& forms, double lambda,
                      std::span<const double> u);

}  // namespace krein::spectra
