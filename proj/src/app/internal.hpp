#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "krein/app.hpp"
#include "krein/forms.hpp"
#include "krein/spectra.hpp"

namespace krein::app::detail {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

forms::AssembledForms assemble(const RunConfig& config);

/// Explicit values; or a geometric grid between the configured ends, closed
/// at lambda_max; missing ends default to lambda_1 / 2 and the N/2-th
/// discrete eigenvalue.
std::vector<double> lambda_grid(const RunConfig& config, const spectra::SpectrumResult* krein);

/// max_j ||A x_j - lambda_j B x_j||_inf / (||A||_max + |lambda_max| ||B||_max).
double relative_residual(const linalg::SymMatrix& a, const linalg::SymMatrix& b,
                         const spectra::SpectrumResult& s);

Check make_check(std::string name, std::string property, bool passed, std::string detail);

RunReport run_verify(const RunConfig& config);

}  // namespace krein::app::detail
