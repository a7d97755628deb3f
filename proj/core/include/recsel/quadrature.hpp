#pragma once

#include <functional>

namespace recsel {

struct QuadratureOptions {
  double abs_tolerance = 1e-10;
  double rel_tolerance = 1e-8;
  unsigned max_depth = 15;  // up to 2^15 subintervals
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double l1_norm = 0.0;
};

// Adaptive Gauss-Kronrod (31 point) integration of f over [a, b]. Throws
// NumericError, quoting the achieved error estimate, when the estimate stays
// above max(abs_tolerance, rel_tolerance * |integral of |f||).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace recsel
