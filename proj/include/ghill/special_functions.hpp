#pragma once

#include <functional>
#include <span>

namespace ghill {

/// Stopping rule shared by the iterative routines.
struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_iter = 100;

  /// Throws DomainError unless abs_tol + rel_tol > 0 and max_iter >= 1.
  void validate() const;
};

/// Principal branch W0 of the Lambert W function, x >= -1/e.
/// Arguments within tol.abs_tol below -1/e are clamped to the branch point.
double lambert_w0(double x, const Tolerance& tol = {});

/// P(U_1 + ... + U_k <= x) for i.i.d. U(0,1); k in [1, 64].
double irwin_hall_cdf(double x, int k);

/// Regularized lower incomplete gamma P(shape, rate * x).
double gamma_cdf(double x, double shape, double rate);

double std_normal_cdf(double x);
/// Inverse of std_normal_cdf on (0, 1).
double std_normal_quantile(double q);

/// Kolmogorov-Smirnov distance between the empirical law of an ascending
/// sample and a continuous cdf.
double ks_statistic(std::span<const double> sorted_sample,
                    const std::function<double(double)>& cdf);

namespace detail {

// Lower real branch W_{-1} on [-1/e, 0). Needed for the upper inverse of
// tails of the form (1 + ln x)/x and ln x / x.
double lambert_wm1(double x, const Tolerance& tol = {});

}  // namespace detail

}  // namespace ghill
