#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ghill/plot_series.hpp"

namespace ghill {

/// Immutable batch of positive observations. Keeps arrival order and a
/// cached ascending copy.
class Sample {
 public:
  /// Throws DataError on an empty input or any non-positive / non-finite value.
  explicit Sample(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> sorted() const noexcept { return sorted_; }

  /// Order statistic X_{(i,n)}, 1-based ascending.
  double order_statistic(std::size_t i) const;

  /// The first n observations in arrival order.
  Sample prefix(std::size_t n) const;

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

struct EstimatorSpec {
  std::size_t k = 1;
  /// Power parameter; 0 selects the Hill limit.
  double p = 0.0;
};

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
};

struct EstimateResult {
  double gamma_hat = 0.0;
  /// Power mean H; absent for p = 0.
  std::optional<double> h_value;
  EstimatorSpec spec;
  std::size_t n = 0;
  /// Filled by the asymptotics layer.
  std::optional<double> std_err;
  std::optional<ConfidenceInterval> ci;
};

/// H = (1/k) sum_{i=1..k} (X_{(n-i+1,n)} / X_{(n-k,n)})^p for p != 0.
double h_statistic(const Sample& sample, std::size_t k, double p);

/// Generalized Hill estimator (1/p)(1 - 1/H); the Hill estimator at p = 0.
EstimateResult generalized_hill(const Sample& sample, std::size_t k, double p);

/// Same estimator on the top k + 1 values given in any order, the pivot
/// being their minimum. Used by the sliding-window diagnostics.
double generalized_hill_top(std::span<const double> top_k_plus_1, double p);

struct MeanExcess {
  std::size_t count = 0;
  double value = 0.0;
};

/// e(u) = mean of X - u over the observations strictly above u.
MeanExcess mean_excess(const Sample& sample, double u);

/// Mean excess at every distinct observation except the largest, ascending.
/// Requires n >= 3 and at least two distinct values.
PlotSeries mean_excess_series(const Sample& sample);

/// X_{(n-m,n)}: the threshold leaving m exceedances. With ties this is the
/// largest observation having at least m values strictly above it; when no
/// observation qualifies (m = n) the minimum is returned and exceedances
/// are counted with >=.
double threshold_for_exceedances(const Sample& sample, std::size_t m);

/// Peaks-over-threshold tail estimate (x/u)^{-1/gamma} n_u / n.
double pot_tail_probability(std::size_t n, std::size_t n_u, double u, double gamma_hat, double x);

/// The 41 snow-load ratios of the Slovak snow-extremes study, in published order.
std::span<const double> snow_fixture() noexcept;

}  // namespace ghill
