#include "ghill/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ghill/errors.hpp"

namespace ghill {

namespace {

constexpr double kInvE = 1.0 / std::numbers::e;

// One Halley step for w * exp(w) = x.
double halley_step(double w, double x) {
  const double ew = std::exp(w);
  const double f = w * ew - x;
  const double wp1 = w + 1.0;
  const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
  return f / denom;
}

// Series in p = sqrt(2 (e x + 1)) about the branch point; sign selects the
// branch (+1 for W0, -1 for W_{-1}).
double branch_point_series(double x, double sign) {
  const double p = sign * std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
  return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
}

bool converged(double step, double w, const Tolerance& tol) {
  return std::abs(step) <= tol.abs_tol + tol.rel_tol * std::abs(w) ||
         std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w);
}

}  // namespace

void Tolerance::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol + rel_tol > 0.0)) {
    throw DomainError("tolerance: abs_tol and rel_tol must be non-negative with a positive sum");
  }
  if (max_iter < 1) throw DomainError("tolerance: max_iter must be at least 1");
}

double lambert_w0(double x, const Tolerance& tol) {
  tol.validate();
  if (std::isnan(x)) throw DomainError("lambert_w0: NaN argument");
  if (x < -kInvE) {
    if (x < -kInvE - tol.abs_tol) {
      throw DomainError("lambert_w0: argument below -1/e");
    }
    return -1.0;
  }
  if (x == -kInvE) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w;
  if (x < -0.32) {
    w = branch_point_series(x, 1.0);
  } else if (x <= 3.0) {
    const double l = std::log1p(x);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int i = 0; i < tol.max_iter; ++i) {
    if (w <= -1.0) return -1.0;
    const double step = halley_step(w, x);
    w -= step;
    if (converged(step, w, tol)) return w;
  }
  throw NumericalError("lambert_w0: no convergence for x = " + std::to_string(x),
                       std::abs(w * std::exp(w) - x));
}

namespace detail {

double lambert_wm1(double x, const Tolerance& tol) {
  tol.validate();
  if (std::isnan(x) || x >= 0.0) throw DomainError("lambert_wm1: argument must lie in [-1/e, 0)");
  if (x <= -kInvE) {
    if (x < -kInvE - tol.abs_tol) throw DomainError("lambert_wm1: argument below -1/e");
    return -1.0;
  }

  if (x < -0.25) {
    double w = branch_point_series(x, -1.0);
    for (int i = 0; i < tol.max_iter; ++i) {
      if (w >= -1.0) return -1.0;
      const double step = halley_step(w, x);
      w -= step;
      if (converged(step, w, tol)) return w;
    }
    throw NumericalError("lambert_wm1: no convergence", std::abs(w * std::exp(w) - x));
  }

  // Newton on w + ln(-w) = ln(-x); stays representable for subnormal x.
  const double target = std::log(-x);
  const double l2 = std::log(-target);
  double w = target - l2 + l2 / target;
  for (int i = 0; i < tol.max_iter; ++i) {
    const double g = w + std::log(-w) - target;
    const double step = g / (1.0 + 1.0 / w);
    w -= step;
    if (w > -1.0) w = -1.0 - 1e-12;
    if (converged(step, w, tol)) return w;
  }
  throw NumericalError("lambert_wm1: no convergence", std::abs(w + std::log(-w) - target));
}

}  // namespace detail

double irwin_hall_cdf(double x, int k) {
  if (k < 1 || k > 64) throw DomainError("irwin_hall_cdf: k must lie in [1, 64]");
  if (std::isnan(x)) throw DomainError("irwin_hall_cdf: NaN argument");
  if (x <= 0.0) return 0.0;
  if (x >= k) return 1.0;
  if (x > 0.5 * k) return 1.0 - irwin_hall_cdf(k - x, k);

  // F_k(x) = sum_{j>=0} f_{k+1}(x - j), where f_{k+1} is the cardinal B-spline of order
  // k + 1. Every term is nonnegative, so the Cox-de Boor recursion loses no digits.
  const int m = k + 1;
  const int i = static_cast<int>(std::floor(x));
  const long double xl = x;
  // b[r] holds N_{i-r, order}(x); entries with r >= order vanish.
  std::array<long double, 66> b{};
  b[0] = 1.0L;
  for (int order = 2; order <= m; ++order) {
    for (int r = order - 1; r >= 0; --r) {
      const int j = i - r;
      const long double left = b[r] * (xl - j);
      const long double right = r > 0 ? b[r - 1] * (j + order - xl) : 0.0L;
      b[r] = (left + right) / (order - 1);
    }
  }
  long double sum = 0.0L;
  for (int r = 0; r < m && i - r >= 0; ++r) sum += b[r];
  const double result = static_cast<double>(sum);
  return std::clamp(result, 0.0, 1.0);
}

double gamma_cdf(double x, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate)) {
    throw DomainError("gamma_cdf: shape and rate must be positive and finite");
  }
  if (std::isnan(x)) throw DomainError("gamma_cdf: NaN argument");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;

  const double s = rate * x;
  const double log_prefactor = -s + shape * std::log(s) - std::lgamma(shape);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int max_terms = 10000;

  if (s < shape + 1.0) {
    double ap = shape;
    double term = 1.0 / shape;
    double sum = term;
    for (int n = 0; n < max_terms; ++n) {
      ap += 1.0;
      term *= s / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * eps) break;
    }
    return std::clamp(sum * std::exp(log_prefactor), 0.0, 1.0);
  }

  // Upper tail by the Lentz continued fraction.
  constexpr double tiny = 1e-300;
  double b = s + 1.0 - shape;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < max_terms; ++i) {
    const double an = -i * (i - shape);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  const double upper = std::exp(log_prefactor) * h;
  return std::clamp(1.0 - upper, 0.0, 1.0);
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double std_normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("std_normal_quantile: q must lie in (0, 1)");

  // Acklam's rational approximation, then Halley refinement against erfc.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (q < p_low) {
    const double r = std::sqrt(-2.0 * std::log(q));
    x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  } else if (q <= 1.0 - p_low) {
    const double r0 = q - 0.5;
    const double r = r0 * r0;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * r0 /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double r = std::sqrt(-2.0 * std::log1p(-q));
    x = -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  }

  const double sqrt_2pi = std::sqrt(2.0 * std::numbers::pi);
  for (int i = 0; i < 2; ++i) {
    // cdf(x) - q, evaluated on the side that avoids cancellation.
    const double e = (x < 0.0) ? std_normal_cdf(x) - q
                               : (1.0 - q) - 0.5 * std::erfc(x / std::numbers::sqrt2);
    const double u = e * sqrt_2pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double ks_statistic(std::span<const double> sorted_sample,
                    const std::function<double(double)>& cdf) {
  if (sorted_sample.empty()) throw DomainError("ks_statistic: empty sample");
  if (!std::is_sorted(sorted_sample.begin(), sorted_sample.end())) {
    throw DomainError("ks_statistic: sample is not sorted ascending");
  }
  const double m = static_cast<double>(sorted_sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
    const double f = cdf(sorted_sample[i]);
    d = std::max({d, std::abs((i + 1) / m - f), std::abs(i / m - f)});
  }
  return std::min(d, 1.0);
}

}  // namespace ghill
