#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ghill/asymptotics.hpp"
#include "ghill/errors.hpp"
#include "ghill/estimators.hpp"
#include "support.hpp"

using namespace ghill;

namespace {

/// E g(Z) for Z the standardized U^{-x} (or -ln U at x = 0), by Simpson in
/// w with u = w^40 so that the u -> 0 end is smooth.
double standardized_moment(double x, double (*g)(double)) {
  constexpr int M = 40;
  double mean = 1.0, sd = 1.0;
  if (x != 0.0) {
    mean = 1.0 / (1.0 - x);
    sd = std::abs(x) / (std::sqrt(1.0 - 2.0 * x) * (1.0 - x));
  }
  const auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double u = std::pow(w, M);
    if (u == 0.0) return 0.0;
    const double y = x == 0.0 ? -std::log(u) : std::pow(u, -x);
    return g((y - mean) / sd) * M * std::pow(w, M - 1);
  };
  return test::simpson(integrand, 0.0, 1.0, 400000);
}

double abs_cube(double z) { return std::abs(z * z * z); }
double cube(double z) { return z * z * z; }

}  // namespace

TEST_CASE("moments of powers of a uniform") {
  CHECK(moment_u_power(1, {0.25}) == doctest::Approx(4.0 / 3.0));
  CHECK(moment_u_power(2, {-1.0}) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(moment_u_power(2, {0.5}), DomainError);
  // Var = E U^{-2x} - (E U^{-x})^2.
  for (double x : {-2.0, -0.5, 0.1, 0.3}) {
    const PGamma pg{x};
    const double direct = moment_u_power(2, pg) - std::pow(moment_u_power(1, pg), 2);
    CHECK(variance_u_power(pg) == doctest::Approx(direct).epsilon(1e-12));
  }
  CHECK(log_moments(0.5).mean == 0.5);
  CHECK(log_moments(0.5).variance == 0.25);
}

TEST_CASE("asymptotic standard deviation") {
  CHECK(asymptotic_sd(0.0, 0.7) == doctest::Approx(0.7));
  CHECK(asymptotic_sd(-1.0, 1.0) == doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK_THROWS_AS(asymptotic_sd(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(asymptotic_sd(0.0, 0.0), DomainError);
  // Minimal at p = 0 (Hill) for fixed gamma.
  for (double p : {-2.0, -0.3, 0.1, 0.4}) CHECK(asymptotic_sd(p, 1.0) > asymptotic_sd(0.0, 1.0));
}

TEST_CASE("Berry-Esseen moment at the Hill point") {
  CHECK(berry_esseen_phi({0.0}) == doctest::Approx(12.0 / std::numbers::e - 2.0).epsilon(1e-15));
  for (double x : {1e-8, -1e-8, 1e-5}) CHECK(std::abs(berry_esseen_phi({x}) - berry_esseen_phi({0.0})) < 1e-4);
  CHECK(third_central_moment_std({0.0}) == 2.0);
  CHECK_THROWS_AS(berry_esseen_phi({1.0 / 3.0}), DomainError);
}

TEST_CASE("closed-form moments match direct integration") {
  for (double x : {-8.0, -3.0, -1.221, -1.0, -0.25, 0.0, 0.1, 0.2, 0.3}) {
    CAPTURE(x);
    CHECK(berry_esseen_phi({x}) == doctest::Approx(standardized_moment(x, abs_cube)).epsilon(1e-6));
    CHECK(third_central_moment_std({x}) == doctest::Approx(standardized_moment(x, cube)).epsilon(1e-6));
  }
}

TEST_CASE("optimal p minimizes phi") {
  // Brute-force grid on the closed form.
  double best_x = 0.0, best_phi = 1e300;
  for (int i = 0; i <= 53000; ++i) {
    const double x = -5.0 + i * 1e-4;
    const double v = berry_esseen_phi({x});
    if (v < best_phi) {
      best_phi = v;
      best_x = x;
    }
  }
  const auto opt = optimal_p_berry_esseen(1.0);
  CHECK(opt.x == doctest::Approx(best_x).epsilon(2e-4));
  CHECK(opt.x == doctest::Approx(-1.16053).epsilon(1e-5));
  CHECK(opt.phi <= best_phi + 1e-12);
  // The optimum scales as x / gamma.
  CHECK(optimal_p_berry_esseen(0.5).p == doctest::Approx(2.0 * opt.x));
  CHECK(optimal_p_berry_esseen(2.0).x == doctest::Approx(opt.x));
  CHECK_THROWS_AS(optimal_p_berry_esseen(0.0), DomainError);
}

TEST_CASE("superiority interval") {
  const auto [lo, hi] = berry_esseen_superiority_interval();
  CHECK(hi == 0.0);
  CHECK(berry_esseen_phi({lo}) == doctest::Approx(berry_esseen_phi({0.0})).epsilon(1e-12));
  // Grid oracle: phi < phi(0) strictly inside, above it just outside.
  for (double x = lo + 0.01; x < -1e-3; x += 0.01) CHECK(berry_esseen_phi({x}) < berry_esseen_phi({0.0}));
  CHECK(berry_esseen_phi({lo - 0.01}) > berry_esseen_phi({0.0}));
  CHECK(lo == doctest::Approx(-7.64).epsilon(0.05 / 7.64));
}

TEST_CASE("Paulauskas-Vaiciulis optimal p") {
  CHECK(paulauskas_p_star(1.0, -1.0) == doctest::Approx(1.5 - std::sqrt(7.0) / 2.0).epsilon(1e-14));
  CHECK(paulauskas_p_star(0.5, -1.0) == doctest::Approx(2.5 - std::sqrt(17.0) / 2.0).epsilon(1e-14));
  CHECK(paulauskas_p_star(1.0, -2.0) == doctest::Approx(2.0 - std::sqrt(14.0) / 2.0).epsilon(1e-14));
  CHECK(paulauskas_p_star(1.0, 0.0) == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-14));
  CHECK(paulauskas_p_star(1.0, -1.0) == doctest::Approx(0.177).epsilon(1e-3 / 0.177));
  CHECK(paulauskas_p_star(0.5, -1.0) == doctest::Approx(0.438).epsilon(1e-3 / 0.438));
  CHECK(paulauskas_p_star(1.0, -2.0) == doctest::Approx(0.129).epsilon(1e-3 / 0.129));
  CHECK(paulauskas_p_star(1.0, 0.0) == doctest::Approx(0.292).epsilon(1e-3 / 0.292));
  CHECK_THROWS_AS(paulauskas_p_star(1.0, 0.5), DomainError);
}

TEST_CASE("confidence interval") {
  const auto ci = confidence_interval(0.0829191708354674, 17, 0.95);
  CHECK(ci.lower == doctest::Approx(0.0562).epsilon(0.0005 / 0.0562));
  CHECK(ci.upper == doctest::Approx(0.1580).epsilon(0.0005 / 0.1580));
  const double z = 1.959963984540054;
  CHECK(ci.lower == doctest::Approx(0.0829191708354674 / (1.0 + z / std::sqrt(17.0))).epsilon(1e-13));
  CHECK(confidence_interval_defined(4, 0.95));
  CHECK_FALSE(confidence_interval_defined(3, 0.95));
  CHECK_THROWS_AS(confidence_interval(0.1, 3, 0.95), DomainError);
  CHECK_THROWS_AS(confidence_interval(0.1, 100, 1.0), DomainError);
  // Wider at higher level and narrower at larger k.
  const auto w = [](std::size_t k, double level) {
    const auto c = confidence_interval(1.0, k, level);
    return c.upper - c.lower;
  };
  CHECK(w(100, 0.99) > w(100, 0.9));
  CHECK(w(400, 0.95) < w(25, 0.95));
}

TEST_CASE("normalized statistics") {
  CHECK(normalized_statistic(1.1, StatisticKind::hill, 100, 0.0, 1.0) == doctest::Approx(1.0));
  CHECK(normalized_statistic(1.1, StatisticKind::gh, 100, 0.0, 1.0) == doctest::Approx(1.0));
  CHECK(normalized_statistic(0.5, StatisticKind::h, 16, -1.0, 1.0) == doctest::Approx(0.0));
  const double scale = 1.0 / (std::sqrt(3.0) * 2.0);
  CHECK(normalized_statistic(0.5 + scale, StatisticKind::h, 1, -1.0, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(normalized_statistic(1.0, StatisticKind::h, 1, 0.0, 1.0), DomainError);
}

TEST_CASE("attach_asymptotics fills what is defined") {
  const auto s = snow_fixture();
  const Sample snow(std::vector<double>(s.begin(), s.end()));
  auto r = generalized_hill(snow, 17, 0.0);
  attach_asymptotics(r, 0.95);
  REQUIRE(r.std_err);
  CHECK(*r.std_err == doctest::Approx(r.gamma_hat / std::sqrt(17.0)));
  REQUIRE(r.ci);
  auto small = generalized_hill(snow, 3, 0.0);
  attach_asymptotics(small, 0.95);
  CHECK(small.std_err);
  CHECK_FALSE(small.ci);
}
