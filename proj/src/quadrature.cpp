#include "ghill/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "ghill/errors.hpp"

namespace ghill {

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  const double value = kronrod * half;
  const double error = std::abs((kronrod - gauss) * half);
  if (!std::isfinite(value)) {
    throw NumericalError("integrate: non-finite integrand value", std::numeric_limits<double>::infinity());
  }
  return {a, b, value, error};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
  if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("integrate: bounds must be finite");
  if (a == b) return {};
  if (a > b) {
    QuadratureResult r = integrate(f, b, a, opts);
    r.value = -r.value;
    return r;
  }

  std::priority_queue<Segment> queue;
  Segment first = gauss_kronrod(f, a, b);
  double total = first.value;
  double total_error = first.error;
  queue.push(first);
  int evaluations = 15;
  int intervals = 1;

  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

  while (total_error > target()) {
    if (intervals >= opts.max_intervals) {
      throw NumericalError("integrate: subdivision limit reached", total_error);
    }
    Segment worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericalError("integrate: interval cannot be subdivided further", total_error);
    }
    queue.pop();
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    evaluations += 30;
    ++intervals;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum to shed drift from the running updates.
  double value = 0.0;
  double error = 0.0;
  while (!queue.empty()) {
    value += queue.top().value;
    error += queue.top().error;
    queue.pop();
  }
  return {value, error, evaluations};
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     const QuadratureOptions& opts) {
  auto mapped = [&f](double v) {
    const double one_minus = 1.0 - v;
    if (one_minus <= 0.0) return 0.0;
    const double y = v / one_minus;
    if (!std::isfinite(y)) return 0.0;
    const double fy = f(y);
    if (fy == 0.0) return 0.0;
    return fy / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, opts);
}

double bisect(const std::function<double(double)>& f, double lo, double hi, int steps) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw DomainError("bisect: no sign change on the bracket");
  for (int i = 0; i < steps; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                               int scan_points, double x_tol) {
  if (!(lo < hi) || scan_points < 3) throw DomainError("minimize_scalar: invalid bracket");
  const double h = (hi - lo) / scan_points;
  int best = -1;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < scan_points; ++i) {
    const double v = f(lo + (i + 0.5) * h);
    if (std::isfinite(v) && v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best < 0) throw NumericalError("minimize_scalar: no finite function value on the scan", 0.0);

  double a = std::max(lo, lo + (best - 0.5) * h);
  double b = std::min(hi, lo + (best + 1.5) * h);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int iterations = 0;
  while (b - a > x_tol) {
    if (++iterations > 500) throw NumericalError("minimize_scalar: golden section did not converge", b - a);
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace ghill
