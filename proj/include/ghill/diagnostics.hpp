#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ghill/distributions.hpp"
#include "ghill/estimators.hpp"
#include "ghill/plot_series.hpp"
#include "ghill/random.hpp"

namespace ghill {

// ---- Plot series -----------------------------------------------------------

/// Estimates with a fixed number k of top order statistics on the growing
/// prefixes X_1..X_n, n = k+1..N, of the observations in arrival order.
/// Always carries the Hill curve ("hill"); each nonzero p adds "gh[p=...]".
PlotSeries fixed_k_series(const Sample& observations, std::size_t k, std::span<const double> p_list);

/// Hill plot over k = 1..n-1 with one generalized curve per nonzero p and
/// the normal-approximation band around the Hill curve (NaN where the
/// interval is undefined for that k).
PlotSeries hill_plot_series(const Sample& sample, std::span<const double> p_list, double level);
PlotSeries hill_plot_series(const Sample& sample, double p, double level);

/// Curve name used for power p in the series above.
std::string curve_name(double p);

// ---- Bootstrap -------------------------------------------------------------

struct BootstrapConfig {
  std::size_t replicates = 1000;
  double subsample_fraction = 0.9;
  std::size_t exceedance_target = 200;
  std::size_t k = 80;
  Seed seed{};

  void validate() const;
};

struct BootstrapReport {
  BootstrapConfig config;
  double p = 0.0;
  /// x = n in [k+1, m]; curves "mean", "min", "max".
  PlotSeries series;
};

/// Repeated without-replacement subsampling: each replicate keeps
/// floor(fraction * N) observations (in arrival order), cuts them at the
/// threshold leaving m exceedances, and runs the fixed-k series on those
/// exceedances. Replicate r draws from the stream keyed by seed ^ r.
BootstrapReport bootstrap_band(const Sample& population, const BootstrapConfig& config, double p,
                               const std::string& source = "data");

// ---- Exact and limiting laws -------------------------------------------------

/// KS distance between simulated statistics on Pareto samples and their
/// exact law: Hill vs Gamma(k, k alpha) for p = 0, k H vs Irwin-Hall(k) for
/// p = -alpha, otherwise H vs an empirical reference of 10x replicates
/// direct draws of (1/k) sum U^{-p gamma}.
double exact_law_check(const TailModel& model, std::size_t k, double p, std::size_t n,
                       std::size_t replicates, Seed seed);

/// KS distance of H_{k,n,p} to its fixed-k limit law at each n.
std::vector<double> limiting_law_check(const TailModel& model, std::size_t k, double p,
                                       std::span<const std::size_t> n_list, std::size_t replicates,
                                       Seed seed);

// ---- Second-order diagnostics ----------------------------------------------

enum class EvalMethod {
  /// Closed form when known, quadrature otherwise.
  automatic,
  quadrature,
};

/// J(t) = t * int_{b(t)}^inf tail(s) ds / s.
double second_order_j(const TailModel& model, double t, EvalMethod method = EvalMethod::automatic);

/// True when second_order_j has a closed form for this model.
bool has_closed_form_j(const TailModel& model) noexcept;

/// sqrt(k) (J(n/k) - gamma) at each n with k = k_rule(n).
PlotSeries c_curve(const TailModel& model, std::span<const double> n_list,
                   const std::function<std::size_t(double)>& k_rule);

/// t * int_{b(t)}^inf ln s dF(s).
double gamma_repr_eq(const TailModel& model, double t);
/// t * int_t^inf (1/s) d ln U(s), with d ln U taken numerically from u_function.
double gamma_repr_alt(const TailModel& model, double t);
double gamma_repr_delta(const TailModel& model, double t);

/// a*(t) = t * int_{ln U(t)}^inf tail(e^s) ds.
double davis_resnick_a(const TailModel& model, double t);

struct SecondOrderCurve {
  std::vector<double> t;
  std::vector<double> j;
  std::vector<double> gamma_eq;
  std::vector<double> gamma_alt;
  std::vector<double> delta;
  std::vector<double> a_star;
};

SecondOrderCurve second_order_curve(const TailModel& model, std::span<const double> t_list);
PlotSeries to_plot_series(const SecondOrderCurve& curve, const TailModel& model);

}  // namespace ghill
