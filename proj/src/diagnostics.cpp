#include "ghill/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "ghill/asymptotics.hpp"
#include "ghill/errors.hpp"
#include "ghill/parallel.hpp"
#include "ghill/quadrature.hpp"
#include "ghill/special_functions.hpp"

namespace ghill {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr const char* kPrefixNote =
    "n indexes prefixes X_1..X_n of the observations in arrival order";

/// Estimates for one p on every prefix n = k+1..N of `values`, keeping the
/// top k+1 of the running prefix in a min-heap.
std::vector<double> fixed_k_curve(std::span<const double> values, std::size_t k, double p) {
  std::vector<double> heap(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k + 1));
  std::make_heap(heap.begin(), heap.end(), std::greater<>{});
  std::vector<double> out;
  out.reserve(values.size() - k);
  out.push_back(generalized_hill_top(heap, p));
  for (std::size_t i = k + 1; i < values.size(); ++i) {
    if (values[i] > heap.front()) {
      std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
      heap.back() = values[i];
      std::push_heap(heap.begin(), heap.end(), std::greater<>{});
    }
    out.push_back(generalized_hill_top(heap, p));
  }
  return out;
}

std::vector<double> unique_nonzero(std::span<const double> p_list) {
  std::vector<double> out;
  for (double p : p_list) {
    if (!std::isfinite(p)) throw DomainError("p must be finite");
    if (p != 0.0 && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

/// Top k+1 values of `xs` (reordered in place) as log-ratios over the pivot.
std::vector<double> top_log_ratios(std::vector<double>& xs, std::size_t k) {
  const auto pivot_pos = xs.end() - static_cast<std::ptrdiff_t>(k + 1);
  std::nth_element(xs.begin(), pivot_pos, xs.end());
  const double pivot = *pivot_pos;
  std::vector<double> logs;
  logs.reserve(k);
  for (auto it = pivot_pos + 1; it != xs.end(); ++it) logs.push_back(std::log(*it / pivot));
  return logs;
}

double mean_of(std::span<const double> v) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : v) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return (sum + comp) / static_cast<double>(v.size());
}

/// H from log-ratios; Hill (the mean log-ratio) when p = 0.
double power_mean(std::span<const double> logs, double p) {
  if (p == 0.0) return mean_of(logs);
  std::vector<double> terms(logs.size());
  std::transform(logs.begin(), logs.end(), terms.begin(), [p](double l) { return std::exp(p * l); });
  return mean_of(terms);
}

/// sup |F_a - F_b| for two ascending samples.
double two_sample_ks(std::span<const double> a, std::span<const double> b) {
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

/// 10x-oversampled draws of (1/k) sum U^a, ascending.
std::vector<double> reference_draws(std::size_t k, double a, std::size_t count, Seed seed) {
  std::vector<double> out(count);
  const Seed ref{mix64(seed.value ^ 0x7265666572656e63ULL)};
  parallel_for(count, [&](std::size_t r) {
    UniformStream s(ref.replicate(r));
    std::vector<double> terms(k);
    for (auto& t : terms) t = std::pow(s.next(), a);
    out[r] = mean_of(terms);
  });
  std::sort(out.begin(), out.end());
  return out;
}


/// KS of `stats` (ascending) against the law of (1/k) sum U^a, choosing
/// the closed form when one applies.
double ks_to_uniform_power_law(std::vector<double>& stats, std::size_t k, double a,
                               std::size_t replicates, Seed seed) {
  std::sort(stats.begin(), stats.end());
  if (k == 1) {
    return ks_statistic(stats, [a](double h) { return h <= 0.0 ? 0.0 : std::min(1.0, std::pow(h, 1.0 / a)); });
  }
  if (std::abs(a - 1.0) <= 1e-12 && k <= 64) {
    const double kk = static_cast<double>(k);
    return ks_statistic(stats, [&](double h) { return irwin_hall_cdf(kk * h, static_cast<int>(k)); });
  }
  const auto ref = reference_draws(k, a, 10 * replicates, seed);
  return two_sample_ks(stats, ref);
}

void require_t(double t, const char* who) {
  if (!(t > 1.0) || !std::isfinite(t)) throw DomainError(std::string(who) + ": t must be finite and > 1");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string curve_name(double p) {
  if (p == 0.0) return "hill";
  return "gh[p=" + format_number(p) + "]";
}

// ---- Plot series -----------------------------------------------------------

PlotSeries fixed_k_series(const Sample& observations, std::size_t k, std::span<const double> p_list) {
  const std::size_t n = observations.size();
  if (k < 1 || k + 1 > n) throw DomainError("fixed_k_series: need 1 <= k and k + 1 <= n");
  const auto ps = unique_nonzero(p_list);
  PlotSeries series;
  series.x_label = "n";
  for (std::size_t m = k + 1; m <= n; ++m) series.x.push_back(static_cast<double>(m));
  series.add_curve(curve_name(0.0), fixed_k_curve(observations.values(), k, 0.0));
  for (double p : ps) series.add_curve(curve_name(p), fixed_k_curve(observations.values(), k, p));
  series.meta.push_back("fixed-k series, k=" + std::to_string(k));
  series.meta.emplace_back(kPrefixNote);
  return series;
}

PlotSeries hill_plot_series(const Sample& sample, std::span<const double> p_list, double level) {
  const std::size_t n = sample.size();
  if (n < 3) throw DomainError("hill_plot_series: need at least 3 observations");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("hill_plot_series: level must be in (0, 1)");
  const auto ps = unique_nonzero(p_list);
  const auto sorted = sample.sorted();

  // desc[j] = ln X_(n-j), j = 0..n-1.
  std::vector<double> desc(n);
  for (std::size_t j = 0; j < n; ++j) desc[j] = std::log(sorted[n - 1 - j]);

  PlotSeries series;
  series.x_label = "k";
  for (std::size_t k = 1; k < n; ++k) series.x.push_back(static_cast<double>(k));

  std::vector<double> hill(n - 1);
  double sum = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    sum += desc[k - 1];
    hill[k - 1] = std::max(0.0, sum / static_cast<double>(k) - desc[k]);
  }
  PlotSeries::Band band;
  for (std::size_t k = 1; k < n; ++k) {
    if (confidence_interval_defined(k, level)) {
      const auto ci = confidence_interval(hill[k - 1], k, level);
      band.lower.push_back(ci.lower);
      band.upper.push_back(ci.upper);
    } else {
      band.lower.push_back(kNaN);
      band.upper.push_back(kNaN);
    }
  }
  series.add_curve(curve_name(0.0), std::move(hill));

  for (double p : ps) {
    // ln H = p (l_max - l_pivot) + ln mean exp(p (l_j - l_max)).
    std::vector<double> gh(n - 1);
    double s = 0.0;
    double comp = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      const double term = std::exp(p * (desc[k - 1] - desc[0]));
      const double t = s + term;
      comp += std::abs(s) >= std::abs(term) ? (s - t) + term : (term - t) + s;
      s = t;
      const double log_h = p * (desc[0] - desc[k]) + std::log((s + comp) / static_cast<double>(k));
      gh[k - 1] = std::max(0.0, -std::expm1(-log_h) / p);
    }
    series.add_curve(curve_name(p), std::move(gh));
  }
  series.band = std::move(band);
  series.meta.push_back("hill plot, band: normal-approximation interval at level " + format_number(level));
  return series;
}

PlotSeries hill_plot_series(const Sample& sample, double p, double level) {
  const double ps[] = {p};
  return hill_plot_series(sample, std::span<const double>(ps), level);
}

// ---- Bootstrap -------------------------------------------------------------

void BootstrapConfig::validate() const {
  if (replicates < 1) throw DomainError("bootstrap: replicates must be >= 1");
  if (!(subsample_fraction > 0.0 && subsample_fraction <= 1.0)) {
    throw DomainError("bootstrap: subsample fraction must be in (0, 1]");
  }
  if (k < 1 || !(k < exceedance_target)) throw DomainError("bootstrap: need 1 <= k < exceedance target");
}

BootstrapReport bootstrap_band(const Sample& population, const BootstrapConfig& config, double p,
                               const std::string& source) {
  config.validate();
  if (!std::isfinite(p)) throw DomainError("bootstrap: p must be finite");
  const std::size_t pop = population.size();
  const auto sub = static_cast<std::size_t>(std::floor(config.subsample_fraction * static_cast<double>(pop)));
  const std::size_t m = config.exceedance_target;
  const std::size_t k = config.k;
  if (sub < m) throw DomainError("bootstrap: subsample smaller than the exceedance target");

  const std::size_t points = m - k;
  std::vector<std::vector<double>> curves(config.replicates);
  parallel_for(config.replicates, [&](std::size_t r) {
    UniformStream stream(config.seed.replicate(r));
    std::vector<std::size_t> idx(pop);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < sub; ++i) {
      const auto j = i + static_cast<std::size_t>(stream.next_below(pop - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(sub);
    std::sort(idx.begin(), idx.end());
    std::vector<double> values;
    values.reserve(sub);
    for (auto i : idx) values.push_back(population.values()[i]);
    const Sample subsample(values);
    const double u = threshold_for_exceedances(subsample, m);
    const bool inclusive = m == sub;
    std::vector<double> exceed;
    exceed.reserve(m);
    for (double x : values) {
      if (exceed.size() == m) break;
      if (x > u || (inclusive && x >= u)) exceed.push_back(x);
    }
    if (exceed.size() < k + 1) throw DomainError("bootstrap: too few distinct exceedances");
    auto curve = fixed_k_curve(exceed, k, p);
    curve.resize(points, kNaN);
    curves[r] = std::move(curve);
  });

  BootstrapReport report;
  report.config = config;
  report.p = p;
  auto& series = report.series;
  series.x_label = "n";
  std::vector<double> mean(points), lo(points), hi(points);
  for (std::size_t i = 0; i < points; ++i) {
    std::vector<double> col;
    col.reserve(config.replicates);
    for (const auto& c : curves) {
      if (!std::isnan(c[i])) col.push_back(c[i]);
    }
    series.x.push_back(static_cast<double>(k + 1 + i));
    if (col.empty()) {
      mean[i] = lo[i] = hi[i] = kNaN;
      continue;
    }
    const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
    lo[i] = *mn;
    hi[i] = *mx;
    mean[i] = std::clamp(mean_of(col), lo[i], hi[i]);
  }
  series.add_curve("mean", std::move(mean));
  series.add_curve("min", std::move(lo));
  series.add_curve("max", std::move(hi));
  series.meta.push_back("bootstrap band, source=" + source + ", estimator=" + curve_name(p));
  series.meta.push_back("replicates=" + std::to_string(config.replicates) +
                        ", fraction=" + format_number(config.subsample_fraction) +
                        ", exceedances=" + std::to_string(m) + ", k=" + std::to_string(k) +
                        ", seed=" + std::to_string(config.seed.value));
  series.meta.emplace_back(kPrefixNote);
  return report;
}

// ---- Exact and limiting laws -------------------------------------------------

double exact_law_check(const TailModel& model, std::size_t k, double p, std::size_t n,
                       std::size_t replicates, Seed seed) {
  if (!model.is_pareto()) throw DomainError("exact_law_check: requires a Pareto model");
  if (k < 1 || k + 1 > n) throw DomainError("exact_law_check: need 1 <= k <= n - 1");
  if (replicates < 1) throw DomainError("exact_law_check: replicates must be >= 1");
  if (!std::isfinite(p)) throw DomainError("exact_law_check: p must be finite");
  const double alpha = model.alpha();

  std::vector<double> stats(replicates);
  parallel_for(replicates, [&](std::size_t r) {
    auto xs = sample(model, n, seed.replicate(r));
    const auto logs = top_log_ratios(xs, k);
    stats[r] = power_mean(logs, p);
  });

  if (p == 0.0) {
    std::sort(stats.begin(), stats.end());
    const double kk = static_cast<double>(k);
    return ks_statistic(stats, [&](double h) { return gamma_cdf(h, kk, kk * alpha); });
  }
  return ks_to_uniform_power_law(stats, k, -p / alpha, replicates, seed);
}

std::vector<double> limiting_law_check(const TailModel& model, std::size_t k, double p,
                                       std::span<const std::size_t> n_list, std::size_t replicates,
                                       Seed seed) {
  if (!(p < 0.0) || !std::isfinite(p)) throw DomainError("limiting_law_check: p must be negative");
  if (k < 1) throw DomainError("limiting_law_check: k must be >= 1");
  if (replicates < 1) throw DomainError("limiting_law_check: replicates must be >= 1");
  const double a = -p * model.gamma();
  std::vector<double> out;
  out.reserve(n_list.size());
  for (std::size_t n : n_list) {
    if (k + 1 > n) throw DomainError("limiting_law_check: need k <= n - 1");
    const Seed base{seed.value ^ mix64(n)};
    std::vector<double> stats(replicates);
    parallel_for(replicates, [&](std::size_t r) {
      auto xs = sample(model, n, base.replicate(r));
      const auto logs = top_log_ratios(xs, k);
      stats[r] = power_mean(logs, p);
    });
    out.push_back(ks_to_uniform_power_law(stats, k, a, replicates, seed));
  }
  return out;
}

// ---- Second-order diagnostics ----------------------------------------------

bool has_closed_form_j(const TailModel& model) noexcept {
  return !std::holds_alternative<HillHorror>(model.variant());
}

double second_order_j(const TailModel& model, double t, EvalMethod method) {
  if (!(t >= 1.0) || !std::isfinite(t)) throw DomainError("second_order_j: t must be finite and >= 1");
  if (method == EvalMethod::automatic && has_closed_form_j(model)) {
    const double b = b_function(model, t);
    return std::visit(
        Overloaded{
            [&](const Pareto& m) { return 1.0 / m.alpha; },
            [&](const HallWeiss& m) {
              return 0.5 * t * (std::pow(b, -m.alpha) / m.alpha + std::pow(b, m.rho - m.alpha) / (m.alpha - m.rho));
            },
            [&](const HillHorror&) { return kNaN; },
            [&](const LogErlang21&) { return t * (2.0 + std::log(b)) / b; },
            [&](const SlowVarLog&) { return t * std::exp(1.0) * (1.0 + std::log(b)) / b; },
        },
        model.variant());
  }
  const double b = b_function(model, t);
  const auto res = integrate_half_line([&](double y) { return tail(model, b * std::exp(y)); });
  return t * res.value;
}

PlotSeries c_curve(const TailModel& model, std::span<const double> n_list,
                   const std::function<std::size_t(double)>& k_rule) {
  PlotSeries series;
  series.x_label = "n";
  std::vector<double> c, ks, js;
  for (double n : n_list) {
    const std::size_t k = k_rule(n);
    if (k < 1 || !(static_cast<double>(k) < n)) throw DomainError("c_curve: k_rule(n) must be in [1, n)");
    const double j = second_order_j(model, n / static_cast<double>(k));
    series.x.push_back(n);
    c.push_back(std::sqrt(static_cast<double>(k)) * (j - model.gamma()));
    ks.push_back(static_cast<double>(k));
    js.push_back(j);
  }
  series.add_curve("c", std::move(c));
  series.add_curve("k", std::move(ks));
  series.add_curve("J", std::move(js));
  series.meta.push_back("c-curve for " + model.spec());
  return series;
}

double gamma_repr_eq(const TailModel& model, double t) {
  require_t(t, "gamma_repr_eq");
  const double b = b_function(model, t);
  const auto res = integrate_half_line([&](double y) {
    const double s = b * std::exp(y);
    if (!std::isfinite(s)) return 0.0;
    const double f = density(model, s);
    return f == 0.0 ? 0.0 : std::log(s) * f * s;
  });
  return t * res.value;
}

double gamma_repr_alt(const TailModel& model, double t) {
  require_t(t, "gamma_repr_alt");
  // g(s) = d ln U / d ln s by a five-point stencil in ln s.
  const auto g = [&](double s) {
    double h = 1e-3;
    if (s * std::exp(-2.0 * h) <= 1.0) h = std::log(s) / 4.0;
    const auto lu = [&](double sigma) { return std::log(u_function(model, s * std::exp(sigma))); };
    return (-lu(2.0 * h) + 8.0 * lu(h) - 8.0 * lu(-h) + lu(-2.0 * h)) / (12.0 * h);
  };
  const auto res = integrate_half_line([&](double y) {
    // g stays bounded for every supported model, so y > 60 adds below 1e-26.
    if (y > 60.0) return 0.0;
    const double w = std::exp(-y);
    return w * g(t / w);
  });
  return res.value;
}

double gamma_repr_delta(const TailModel& model, double t) {
  return gamma_repr_eq(model, t) - gamma_repr_alt(model, t);
}

double davis_resnick_a(const TailModel& model, double t) {
  require_t(t, "davis_resnick_a");
  const double s0 = std::log(u_function(model, t));
  const auto res = integrate_half_line([&](double y) { return tail(model, std::exp(s0 + y)); });
  return t * res.value;
}

SecondOrderCurve second_order_curve(const TailModel& model, std::span<const double> t_list) {
  const std::size_t n = t_list.size();
  SecondOrderCurve out;
  out.t.assign(t_list.begin(), t_list.end());
  out.j.resize(n);
  out.gamma_eq.resize(n);
  out.gamma_alt.resize(n);
  out.delta.resize(n);
  out.a_star.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const double t = t_list[i];
    out.j[i] = second_order_j(model, t);
    out.gamma_eq[i] = gamma_repr_eq(model, t);
    out.gamma_alt[i] = gamma_repr_alt(model, t);
    out.delta[i] = out.gamma_eq[i] - out.gamma_alt[i];
    out.a_star[i] = davis_resnick_a(model, t);
  });
  return out;
}

PlotSeries to_plot_series(const SecondOrderCurve& curve, const TailModel& model) {
  PlotSeries series;
  series.x_label = "t";
  series.x = curve.t;
  series.add_curve("J", curve.j);
  series.add_curve("gamma_eq", curve.gamma_eq);
  series.add_curve("gamma_alt", curve.gamma_alt);
  series.add_curve("delta", curve.delta);
  series.add_curve("a_star", curve.a_star);
  series.meta.push_back("second-order diagnostics for " + model.spec() + ", gamma=" + format_number(model.gamma()));
  return series;
}

}  // namespace ghill
