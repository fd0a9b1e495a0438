#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ghill/errors.hpp"
#include "ghill/special_functions.hpp"
#include "support.hpp"

using namespace ghill;

namespace {

/// F_k(x) = int_{x-1}^{x} F_{k-1}(y) dy, tabulated on a grid by cumulative
/// trapezoids starting from F_1(x) = clamp(x, 0, 1).
std::vector<double> irwin_hall_by_recursion(int k, double h) {
  const int per_unit = static_cast<int>(std::lround(1.0 / h));
  const int size = k * per_unit + 1;
  std::vector<double> f(size);
  for (int i = 0; i < size; ++i) f[i] = std::min(1.0, i * h);
  for (int level = 2; level <= k; ++level) {
    std::vector<double> g(size, 0.0);
    for (int i = 1; i < size; ++i) g[i] = g[i - 1] + 0.5 * h * (f[i] + f[i - 1]);
    std::vector<double> next(size);
    for (int i = 0; i < size; ++i) {
      // Beyond the grid F_{level-1} is 1, so G grows linearly there.
      next[i] = g[i] - (i >= per_unit ? g[i - per_unit] : 0.0);
    }
    f = std::move(next);
  }
  return f;
}

double poisson_gamma_cdf(double x, int shape, double rate) {
  const double lambda = rate * x;
  if (lambda < shape) {
    // P(Poisson(lambda) >= shape), summed upward so no cancellation occurs.
    double term = std::exp(-lambda);
    for (int j = 1; j <= shape; ++j) term *= lambda / j;
    double sum = 0.0;
    for (int j = shape; term > 1e-300 && j < shape + 2000; ++j) {
      sum += term;
      term *= lambda / (j + 1);
    }
    return sum;
  }
  double term = std::exp(-lambda);
  double sum = term;
  for (int j = 1; j < shape; ++j) {
    term *= lambda / j;
    sum += term;
  }
  return 1.0 - sum;
}

}  // namespace

TEST_CASE("lambert_w0 known values") {
  const double ln2 = std::numbers::ln2;
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(1.0) == doctest::Approx(0.567143290409783873).epsilon(1e-15));
  CHECK(lambert_w0(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambert_w0(-1.0 / std::numbers::e) == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(lambert_w0(-ln2 / 2.0) == doctest::Approx(-ln2).epsilon(1e-14));
  CHECK(lambert_w0(2.0 * std::exp(2.0)) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("lambert_w0 near the branch point") {
  // 40-digit reference values.
  CHECK(lambert_w0(-0.36787) == doctest::Approx(-0.99285272982152772597).epsilon(1e-14));
  CHECK(lambert_w0(-0.3678794) == doctest::Approx(-0.9995269666077005325).epsilon(1e-12));
  CHECK(lambert_w0(-0.35) == doctest::Approx(-0.71663881645607369014).epsilon(1e-15));
}

TEST_CASE("lambert_w0 satisfies w e^w = x across magnitudes") {
  for (double x : {-0.3678, -0.3, -0.1, -1e-8, 1e-12, 1e-3, 0.5, 3.0, 10.0, 1e3, 1e8, 1e50, 1e300}) {
    const double w = lambert_w0(x);
    CHECK(w >= -1.0);
    // Compare in log form for large x so that overflow cannot hide errors.
    if (x > 1.0) {
      CHECK(std::log(w) + w == doctest::Approx(std::log(x)).epsilon(1e-13));
    } else {
      CHECK(w * std::exp(w) == doctest::Approx(x).epsilon(1e-12).scale(1e-300));
    }
  }
}

TEST_CASE("lambert_w0 small arguments follow the series x - x^2") {
  for (double x : {1e-6, -1e-6, 1e-9}) {
    CHECK(lambert_w0(x) == doctest::Approx(x - x * x + 1.5 * x * x * x).epsilon(1e-15));
  }
}

TEST_CASE("lambert_w0 domain") {
  CHECK_THROWS_AS(lambert_w0(-0.5), DomainError);
  CHECK_THROWS_AS(lambert_w0(std::nan("")), DomainError);
  CHECK(lambert_w0(-1.0 / std::numbers::e - 1e-14) == doctest::Approx(-1.0).epsilon(1e-6));
  Tolerance bad;
  bad.max_iter = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK_THROWS_AS(lambert_w0(1.0, bad), DomainError);
}

TEST_CASE("lower branch W-1") {
  const double ln2 = std::numbers::ln2;
  CHECK(detail::lambert_wm1(-ln2 / 2.0) == doctest::Approx(-2.0 * ln2).epsilon(1e-14));
  CHECK(detail::lambert_wm1(-1.0 / std::numbers::e) == doctest::Approx(-1.0).epsilon(1e-7));
  for (double x : {-0.36, -0.2, -1e-3, -1e-10, -1e-100, -1e-300}) {
    const double w = detail::lambert_wm1(x);
    CHECK(w <= -1.0);
    CHECK(w + std::log(-w) == doctest::Approx(std::log(-x)).epsilon(1e-13));
  }
}

TEST_CASE("irwin_hall_cdf low orders against the piecewise polynomials") {
  for (double x : {-0.5, 0.0, 0.3, 1.0}) CHECK(irwin_hall_cdf(x, 1) == doctest::Approx(std::clamp(x, 0.0, 1.0)));
  for (double x : {0.25, 0.8, 1.0, 1.4, 1.9}) {
    const double tri = x <= 1.0 ? x * x / 2.0 : 1.0 - (2.0 - x) * (2.0 - x) / 2.0;
    CHECK(irwin_hall_cdf(x, 2) == doctest::Approx(tri).epsilon(1e-14));
  }
  for (double x : {0.5, 1.2, 1.5, 2.7}) {
    double f = 0.0;
    if (x <= 1.0) f = x * x * x / 6.0;
    else if (x <= 2.0) f = (-2.0 * x * x * x + 9.0 * x * x - 9.0 * x + 3.0) / 6.0;
    else f = 1.0 - (3.0 - x) * (3.0 - x) * (3.0 - x) / 6.0;
    CHECK(irwin_hall_cdf(x, 3) == doctest::Approx(f).epsilon(1e-14));
  }
}

TEST_CASE("irwin_hall_cdf matches the convolution recursion") {
  const double h = 1e-3;
  for (int k : {5, 10, 20}) {
    const auto table = irwin_hall_by_recursion(k, h);
    for (double frac : {0.1, 0.27, 0.5, 0.63, 0.9}) {
      const double x = frac * k;
      const auto i = static_cast<std::size_t>(std::lround(x / h));
      // The trapezoid table carries O(h^2) absolute error.
      CHECK(std::abs(irwin_hall_cdf(i * h, k) - table[i]) < 2e-6);
    }
  }
}

TEST_CASE("irwin_hall_cdf properties") {
  for (int k : {1, 2, 7, 30, 64}) {
    CHECK(irwin_hall_cdf(k / 2.0, k) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(irwin_hall_cdf(0.0, k) == 0.0);
    CHECK(irwin_hall_cdf(static_cast<double>(k), k) == 1.0);
    double prev = 0.0;
    for (int i = 1; i < 200; ++i) {
      const double x = k * i / 200.0;
      const double f = irwin_hall_cdf(x, k);
      CHECK(f >= prev);
      CHECK(std::abs(f - (1.0 - irwin_hall_cdf(k - x, k))) < 1e-14);
      prev = f;
    }
  }
  CHECK_THROWS_AS(irwin_hall_cdf(1.0, 0), DomainError);
  CHECK_THROWS_AS(irwin_hall_cdf(1.0, 65), DomainError);
}

TEST_CASE("gamma_cdf against the Poisson sum and erf") {
  for (int shape : {1, 2, 5, 10, 40}) {
    for (double rate : {0.5, 2.0, 20.0}) {
      for (double q : {0.1, 0.5, 1.0, 2.0, 4.0}) {
        const double x = q * shape / rate;
        CHECK(gamma_cdf(x, shape, rate) == doctest::Approx(poisson_gamma_cdf(x, shape, rate)).epsilon(1e-12).scale(1e-14));
      }
    }
  }
  for (double z : {0.01, 0.5, 3.0, 20.0}) CHECK(gamma_cdf(z, 0.5, 1.0) == doctest::Approx(std::erf(std::sqrt(z))).epsilon(1e-13));
  CHECK(gamma_cdf(0.0, 3.0, 1.0) == 0.0);
  CHECK(gamma_cdf(-1.0, 3.0, 1.0) == 0.0);
  CHECK_THROWS_AS(gamma_cdf(1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gamma_cdf(1.0, 1.0, -1.0), DomainError);
}

TEST_CASE("normal cdf and quantile") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std_normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-15));
  CHECK(std_normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
  CHECK(std_normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-13));
  for (double q : {1e-300, 1e-20, 1e-5, 0.02, 0.3, 0.5, 0.7, 0.98, 1.0 - 1e-9}) {
    const double x = std_normal_quantile(q);
    const double back = q < 0.5 ? std_normal_cdf(x) : 1.0 - std_normal_cdf(-x);
    CHECK(back == doctest::Approx(q).epsilon(1e-12));
    if (q > 1e-6 && q < 1.0 - 1e-6) CHECK(std_normal_quantile(1.0 - q) == doctest::Approx(-x).epsilon(1e-9));
  }
  CHECK_THROWS_AS(std_normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(std_normal_quantile(1.0), DomainError);
}

TEST_CASE("ks_statistic by hand") {
  const std::vector<double> xs = {0.1, 0.4, 0.9};
  CHECK(ks_statistic(xs, [](double x) { return x; }) == doctest::Approx(2.0 / 3.0 - 0.4));
  CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, [](double x) { return x; }), DomainError);
  CHECK_THROWS_AS(ks_statistic(std::vector<double>{0.5, 0.2}, [](double x) { return x; }), DomainError);
}
