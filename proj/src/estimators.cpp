#include "ghill/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ghill/errors.hpp"

namespace ghill {

namespace {

void check_k(const Sample& sample, std::size_t k) {
  if (k < 1 || k + 1 > sample.size()) {
    throw DomainError("invalid k = " + std::to_string(k) + " for n = " + std::to_string(sample.size()) +
                      " (need 1 <= k <= n - 1)");
  }
}

// log(X_{(n-i+1,n)} / pivot) for i = 1..k.
template <class Range>
double estimate_from_logs(const Range& log_ratios, double p) {
  const double k = static_cast<double>(std::size(log_ratios));
  if (p == 0.0) {
    double sum = 0.0;
    for (double l : log_ratios) sum += l;
    return sum / k;
  }
  // (1/p)(1 - 1/H) = mean(expm1(p l)) / (p H), stable as p -> 0.
  double excess = 0.0;
  for (double l : log_ratios) excess += std::expm1(p * l);
  excess /= k;
  const double h = 1.0 + excess;
  return std::max(0.0, excess / (p * h));
}

}  // namespace

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DataError("sample: no observations");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw DataError("sample: observation " + std::to_string(i + 1) + " is not a positive finite number");
    }
  }
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());
}

double Sample::order_statistic(std::size_t i) const {
  if (i < 1 || i > sorted_.size()) throw DomainError("order_statistic: index out of range");
  return sorted_[i - 1];
}

Sample Sample::prefix(std::size_t n) const {
  if (n < 1 || n > values_.size()) throw DomainError("sample prefix: length out of range");
  return Sample(std::vector<double>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)));
}

double h_statistic(const Sample& sample, std::size_t k, double p) {
  if (p == 0.0 || std::isnan(p)) throw DomainError("h_statistic: p must be nonzero");
  check_k(sample, k);
  const auto s = sample.sorted();
  const std::size_t n = s.size();
  const double pivot = s[n - k - 1];
  double sum = 0.0;
  for (std::size_t i = n - k; i < n; ++i) sum += std::pow(s[i] / pivot, p);
  return sum / static_cast<double>(k);
}

EstimateResult generalized_hill(const Sample& sample, std::size_t k, double p) {
  if (std::isnan(p)) throw DomainError("generalized_hill: p is NaN");
  check_k(sample, k);
  const auto s = sample.sorted();
  const std::size_t n = s.size();
  const double pivot = s[n - k - 1];
  std::vector<double> logs;
  logs.reserve(k);
  for (std::size_t i = n - k; i < n; ++i) logs.push_back(std::log(s[i] / pivot));

  EstimateResult r;
  r.spec = {k, p};
  r.n = n;
  r.gamma_hat = estimate_from_logs(logs, p);
  if (p != 0.0) r.h_value = h_statistic(sample, k, p);
  return r;
}

double generalized_hill_top(std::span<const double> top, double p) {
  if (top.size() < 2) throw DomainError("generalized_hill_top: need at least k + 1 = 2 values");
  const double pivot = *std::min_element(top.begin(), top.end());
  if (!(pivot > 0.0)) throw DomainError("generalized_hill_top: non-positive pivot");
  std::vector<double> logs;
  logs.reserve(top.size() - 1);
  bool pivot_skipped = false;
  for (double x : top) {
    if (!pivot_skipped && x == pivot) {
      pivot_skipped = true;
      continue;
    }
    logs.push_back(std::log(x / pivot));
  }
  return estimate_from_logs(logs, p);
}

MeanExcess mean_excess(const Sample& sample, double u) {
  const auto s = sample.sorted();
  const auto first = std::upper_bound(s.begin(), s.end(), u);
  if (first == s.end()) throw DomainError("mean_excess: no observation exceeds the threshold");
  double sum = 0.0;
  for (auto it = first; it != s.end(); ++it) sum += *it - u;
  const auto count = static_cast<std::size_t>(s.end() - first);
  return {count, sum / static_cast<double>(count)};
}

PlotSeries mean_excess_series(const Sample& sample) {
  if (sample.size() < 3) throw DomainError("mean_excess_series: need at least 3 observations");
  const auto s = sample.sorted();
  if (s.front() == s.back()) throw DomainError("mean_excess_series: all observations are equal");

  PlotSeries series;
  series.x_label = "u";
  std::vector<double> values;
  // Suffix sums over the ascending copy give each e(u) in O(1).
  std::vector<double> suffix(s.size() + 1, 0.0);
  for (std::size_t i = s.size(); i-- > 0;) suffix[i] = suffix[i + 1] + s[i];
  const double top = s.back();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == top) break;
    if (i + 1 < s.size() && s[i + 1] == s[i]) continue;
    const std::size_t count = s.size() - i - 1;
    series.x.push_back(s[i]);
    values.push_back(suffix[i + 1] / static_cast<double>(count) - s[i]);
  }
  series.add_curve("mean_excess", std::move(values));
  series.meta.push_back("mean excess e(u) = mean(X - u | X > u) at each distinct observation but the largest");
  return series;
}

double threshold_for_exceedances(const Sample& sample, std::size_t m) {
  const std::size_t n = sample.size();
  if (m < 1 || m > n) throw DomainError("threshold_for_exceedances: m must lie in [1, n]");
  const auto s = sample.sorted();
  if (m == n) return s.front();
  // Walk down from X_{(n-m,n)} until at least m values lie strictly above.
  std::size_t idx = n - m - 1;
  while (true) {
    const double u = s[idx];
    const auto above = static_cast<std::size_t>(s.end() - std::upper_bound(s.begin(), s.end(), u));
    if (above >= m) return u;
    if (idx == 0) return s.front();
    --idx;
  }
}

double pot_tail_probability(std::size_t n, std::size_t n_u, double u, double gamma_hat, double x) {
  if (n == 0 || n_u > n) throw DomainError("pot_tail_probability: need n_u <= n and n > 0");
  if (!(u > 0.0)) throw DomainError("pot_tail_probability: threshold must be positive");
  if (!(gamma_hat > 0.0)) throw DomainError("pot_tail_probability: gamma_hat must be positive");
  if (!(x >= u)) throw DomainError("pot_tail_probability: x must not be below the threshold");
  return std::pow(x / u, -1.0 / gamma_hat) * static_cast<double>(n_u) / static_cast<double>(n);
}

std::span<const double> snow_fixture() noexcept {
  static constexpr std::array<double, 41> kSnow = {
      2.03, 2,    2,    1.96, 1.83, 1.83, 1.80, 1.78, 1.75, 1.75, 1.75, 1.75, 1.73, 1.71,
      1.71, 1.67, 1.67, 1.66, 1.65, 1.65, 1.65, 1.65, 1.64, 1.63, 1.61, 1.6,  1.60, 1.60,
      1.59, 1.58, 1.56, 1.56, 1.55, 1.53, 1.53, 1.51, 1.5,  1.49, 1.49, 1.49, 1.49};
  return kSnow;
}

}  // namespace ghill
