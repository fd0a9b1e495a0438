#pragma once

#include <functional>

namespace ghill {

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
/// Throws NumericalError (carrying the achieved error) when the target is
/// not met within max_intervals subdivisions.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Integral of f over [0, inf). Uses y = v / (1 - v) so the integrand on
/// [0, 1) is f(y) / (1 - v)^2; integrands must decay at least like 1/y^2
/// or exponentially.
QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     const QuadratureOptions& opts = {});

/// Bisection for a sign change of f on [lo, hi]; returns the midpoint of
/// the final bracket after `steps` halvings.
double bisect(const std::function<double(double)>& f, double lo, double hi, int steps = 200);

struct MinimizeResult {
  double x = 0.0;
  double fx = 0.0;
};

/// Global-then-local minimizer for a 1D function on [lo, hi]: coarse scan
/// over `scan_points` nodes to bracket the best node, then golden-section
/// refinement to x_tol.
MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                               int scan_points = 500, double x_tol = 1e-10);

}  // namespace ghill
