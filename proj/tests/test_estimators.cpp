#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ghill/distributions.hpp"
#include "ghill/errors.hpp"
#include "ghill/estimators.hpp"

using namespace ghill;

namespace {

/// Textbook form of the estimator in extended precision.
long double naive_estimator(std::vector<double> xs, std::size_t k, long double p) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  const long double pivot = xs[n - k - 1];
  long double acc = 0.0L;
  for (std::size_t i = n - k; i < n; ++i) {
    acc += p == 0.0L ? std::log(xs[i] / pivot) : std::pow(xs[i] / pivot, p);
  }
  acc /= static_cast<long double>(k);
  return p == 0.0L ? acc : (1.0L - 1.0L / acc) / p;
}

Sample snow() {
  const auto s = snow_fixture();
  return Sample(std::vector<double>(s.begin(), s.end()));
}

}  // namespace

TEST_CASE("Sample validates and keeps arrival order") {
  CHECK_THROWS_AS(Sample({}), DataError);
  CHECK_THROWS_AS(Sample({1.0, 0.0}), DataError);
  CHECK_THROWS_AS(Sample({1.0, -2.0}), DataError);
  CHECK_THROWS_AS(Sample({1.0, INFINITY}), DataError);
  const Sample s({3.0, 1.0, 2.0});
  CHECK(s.values()[0] == 3.0);
  CHECK(s.sorted()[0] == 1.0);
  CHECK(s.order_statistic(3) == 3.0);
  CHECK_THROWS_AS(s.order_statistic(0), DomainError);
  CHECK(s.prefix(2).size() == 2);
  CHECK(s.prefix(2).sorted()[1] == 3.0);
}

TEST_CASE("snow fixture estimates") {
  const auto s = snow();
  REQUIRE(s.size() == 41);
  CHECK(s.values()[0] == 2.03);
  CHECK(s.values()[40] == 1.49);
  CHECK(generalized_hill(s, 17, 0.0).gamma_hat == doctest::Approx(0.0829).epsilon(0.0005 / 0.0829));
  CHECK(generalized_hill(s, 17, -0.1).gamma_hat == doctest::Approx(0.0831).epsilon(0.0005 / 0.0831));
}

TEST_CASE("estimator matches the textbook formula") {
  const auto xs = sample(TailModel::hall_weiss(1.0, -1.0), 500, Seed{5});
  const Sample s(xs);
  for (std::size_t k : {1, 10, 100, 499}) {
    for (double p : {-3.0, -1.0, -0.1, 0.0, 0.2, 0.4}) {
      const auto r = generalized_hill(s, k, p);
      CHECK(r.gamma_hat == doctest::Approx(static_cast<double>(naive_estimator(xs, k, p))).epsilon(1e-11));
      if (p != 0.0) {
        REQUIRE(r.h_value);
        CHECK(*r.h_value == doctest::Approx(h_statistic(s, k, p)));
      } else {
        CHECK_FALSE(r.h_value);
      }
    }
  }
}

TEST_CASE("estimator is continuous at p = 0") {
  const Sample s(sample(TailModel::pareto(1.0), 300, Seed{9}));
  const double hill = generalized_hill(s, 50, 0.0).gamma_hat;
  for (double p : {1e-6, -1e-6, 1e-12}) CHECK(generalized_hill(s, 50, p).gamma_hat == doctest::Approx(hill).epsilon(1e-5));
}

TEST_CASE("estimator invariances") {
  auto xs = sample(TailModel::hill_horror(1.0), 400, Seed{21});
  const Sample s(xs);
  std::vector<double> scaled(xs);
  for (auto& x : scaled) x *= 37.5;
  std::mt19937_64 g(1);
  std::vector<double> shuffled(xs);
  std::shuffle(shuffled.begin(), shuffled.end(), g);
  for (double p : {-1.0, 0.0, 0.3}) {
    const double base = generalized_hill(s, 60, p).gamma_hat;
    CHECK(base >= 0.0);
    CHECK(generalized_hill(Sample(scaled), 60, p).gamma_hat == doctest::Approx(base).epsilon(1e-12));
    CHECK(generalized_hill(Sample(shuffled), 60, p).gamma_hat == base);
  }
}

TEST_CASE("generalized_hill_top uses the minimum as pivot") {
  const std::vector<double> top = {5.0, 2.0, 9.0, 3.0};
  const Sample s({1.0, 2.0, 3.0, 5.0, 9.0});
  for (double p : {-1.0, 0.0, 0.25}) {
    CHECK(generalized_hill_top(top, p) == doctest::Approx(generalized_hill(s, 3, p).gamma_hat).epsilon(1e-14));
  }
  CHECK_THROWS_AS(generalized_hill_top(std::vector<double>{1.0}, 0.0), DomainError);
}

TEST_CASE("k range") {
  const Sample s({1.0, 2.0, 3.0});
  CHECK_THROWS_AS(generalized_hill(s, 0, 0.0), DomainError);
  CHECK_THROWS_AS(generalized_hill(s, 3, 0.0), DomainError);
  CHECK_NOTHROW(generalized_hill(s, 2, 0.0));
  CHECK_THROWS_AS(h_statistic(s, 1, 0.0), DomainError);
}

TEST_CASE("mean excess") {
  const Sample s({4.0, 1.0, 3.0, 2.0});
  const auto me = mean_excess(s, 2.0);
  CHECK(me.count == 2);
  CHECK(me.value == doctest::Approx(1.5));
  CHECK_THROWS_AS(mean_excess(s, 4.0), DomainError);
  const auto series = mean_excess_series(s);
  CHECK(series.x == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(series.curve("mean_excess") == std::vector<double>{2.0, 1.5, 1.0});
  CHECK_THROWS_AS(mean_excess_series(Sample({1.0, 2.0})), DomainError);
  CHECK_THROWS_AS(mean_excess_series(Sample({2.0, 2.0, 2.0})), DomainError);
}

TEST_CASE("mean excess series against the direct definition") {
  const Sample s(sample(TailModel::pareto(3.0), 200, Seed{4}));
  const auto series = mean_excess_series(s);
  for (std::size_t i = 0; i < series.x.size(); i += 17) {
    CHECK(series.curve("mean_excess")[i] == doctest::Approx(mean_excess(s, series.x[i]).value).epsilon(1e-12));
  }
}

TEST_CASE("threshold for a number of exceedances") {
  const Sample s({5.0, 1.0, 4.0, 2.0, 3.0});
  CHECK(threshold_for_exceedances(s, 2) == 3.0);
  CHECK(threshold_for_exceedances(s, 4) == 1.0);
  CHECK(threshold_for_exceedances(s, 5) == 1.0);
  const Sample ties({1.0, 2.0, 2.0, 3.0});
  CHECK(threshold_for_exceedances(ties, 2) == 1.0);
  CHECK(threshold_for_exceedances(ties, 1) == 2.0);
  CHECK_THROWS_AS(threshold_for_exceedances(s, 0), DomainError);
  CHECK_THROWS_AS(threshold_for_exceedances(s, 6), DomainError);
  // The snow threshold leaves the 18 exceedances quoted with it.
  CHECK(threshold_for_exceedances(snow(), 18) == 1.65);
}

TEST_CASE("peaks-over-threshold tail probability") {
  const double g = generalized_hill(snow(), 17, 0.0).gamma_hat;
  const double direct = std::pow(2.5 / 1.65, -1.0 / g) * 18.0 / 41.0;
  CHECK(pot_tail_probability(41, 18, 1.65, g, 2.5) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(pot_tail_probability(41, 18, 1.65, g, 1.65) == doctest::Approx(18.0 / 41.0));
  CHECK_THROWS_AS(pot_tail_probability(41, 18, 1.65, g, 1.0), DomainError);
  CHECK_THROWS_AS(pot_tail_probability(41, 42, 1.65, g, 2.0), DomainError);
  CHECK_THROWS_AS(pot_tail_probability(41, 18, 1.65, 0.0, 2.0), DomainError);
}
