#include "ghill/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "ghill/errors.hpp"
#include "ghill/quadrature.hpp"
#include "ghill/special_functions.hpp"

namespace ghill {

namespace {

constexpr double kPhiHill = 12.0 / std::numbers::e - 2.0;

void require_below(double x, double bound, const char* what) {
  if (!(x < bound)) throw DomainError(std::string(what) + ": p*gamma out of range");
}

}  // namespace

double moment_u_power(int s, PGamma pg) {
  if (s < 1) throw DomainError("moment_u_power: s must be positive");
  require_below(s * pg.x, 1.0, "moment_u_power");
  return 1.0 / (1.0 - s * pg.x);
}

double variance_u_power(PGamma pg) {
  require_below(pg.x, 0.5, "variance_u_power");
  const double x = pg.x;
  return x * x / ((1.0 - 2.0 * x) * (1.0 - x) * (1.0 - x));
}

LogMoments log_moments(double gamma) {
  if (!(gamma > 0.0)) throw DomainError("log_moments: gamma must be positive");
  return {gamma, gamma * gamma};
}

double asymptotic_sd(double p, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("asymptotic_sd: gamma must be positive");
  const double x = p * gamma;
  require_below(x, 0.5, "asymptotic_sd");
  return gamma * (1.0 - x) / std::sqrt(1.0 - 2.0 * x);
}

double third_central_moment_std(PGamma pg) {
  require_below(pg.x, 1.0 / 3.0, "third_central_moment_std");
  const double x = pg.x;
  if (x == 0.0) return 2.0;
  // The standardizing sd^3 is |x|^3 (...), hence the sign of x.
  const double sign = x > 0.0 ? 1.0 : -1.0;
  return sign * 2.0 * std::sqrt(1.0 - 2.0 * x) * (1.0 + x) / (1.0 - 3.0 * x);
}

double berry_esseen_phi(PGamma pg) {
  require_below(pg.x, 1.0 / 3.0, "berry_esseen_phi");
  const double x = pg.x;
  if (x == 0.0) return kPhiHill;
  // (1 - x)^{1/x - 1}, evaluated in log form for accuracy near 0.
  const double power = std::exp((1.0 / x - 1.0) * std::log1p(-x));
  return -2.0 * std::sqrt(1.0 - 2.0 * x) / (1.0 - 3.0 * x) * (x + 1.0 - 6.0 * power);
}

OptimalP optimal_p_berry_esseen(double gamma) {
  if (!(gamma > 0.0)) throw DomainError("optimal_p_berry_esseen: gamma must be positive");
  const auto best = minimize_scalar([](double x) { return berry_esseen_phi({x}); }, -50.0, 0.33, 500, 1e-12);
  return {best.x / gamma, best.x, best.fx};
}

std::pair<double, double> berry_esseen_superiority_interval() {
  const double x_low = bisect([](double x) { return berry_esseen_phi({x}) - kPhiHill; }, -20.0, -0.5, 200);
  return {x_low, 0.0};
}

double paulauskas_p_star(double gamma, double rho) {
  if (!(gamma > 0.0)) throw DomainError("paulauskas_p_star: gamma must be positive");
  if (!(rho <= 0.0)) throw DomainError("paulauskas_p_star: rho must be non-positive");
  const double a = 2.0 - rho * gamma;
  return (a - std::sqrt(a * a - 2.0)) / (2.0 * gamma);
}

bool confidence_interval_defined(std::size_t k, double level) {
  if (!(level > 0.0 && level < 1.0) || k == 0) return false;
  return std::sqrt(static_cast<double>(k)) > std_normal_quantile(0.5 + 0.5 * level);
}

ConfidenceInterval confidence_interval(double gamma_hat, std::size_t k, double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence_interval: level must lie in (0, 1)");
  if (!(gamma_hat >= 0.0)) throw DomainError("confidence_interval: gamma_hat must be non-negative");
  const double z = std_normal_quantile(0.5 + 0.5 * level);
  const double root_k = std::sqrt(static_cast<double>(k));
  if (!(root_k > z)) {
    throw DomainError("confidence_interval: k = " + std::to_string(k) + " too small for level " +
                      std::to_string(level));
  }
  return {gamma_hat / (z / root_k + 1.0), gamma_hat / (1.0 - z / root_k), level};
}

double normalized_statistic(double value, StatisticKind kind, std::size_t k, double p, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("normalized_statistic: gamma must be positive");
  if (k == 0) throw DomainError("normalized_statistic: k must be positive");
  const double root_k = std::sqrt(static_cast<double>(k));
  const double x = p * gamma;
  switch (kind) {
    case StatisticKind::hill:
      return root_k * (value - gamma) / gamma;
    case StatisticKind::h: {
      if (p == 0.0) throw DomainError("normalized_statistic: the H statistic needs p != 0");
      require_below(x, 0.5, "normalized_statistic");
      const double scale = std::abs(x) / (std::sqrt(1.0 - 2.0 * x) * (1.0 - x));
      return root_k * (value - 1.0 / (1.0 - x)) / scale;
    }
    case StatisticKind::gh:
      return root_k * (value - gamma) / asymptotic_sd(p, gamma);
  }
  throw DomainError("normalized_statistic: unknown kind");
}

void attach_asymptotics(EstimateResult& result, double level) {
  const double g = result.gamma_hat;
  const double p = result.spec.p;
  if (g > 0.0 && p * g < 0.5) {
    result.std_err = asymptotic_sd(p, g) / std::sqrt(static_cast<double>(result.spec.k));
  }
  if (confidence_interval_defined(result.spec.k, level)) {
    result.ci = confidence_interval(g, result.spec.k, level);
  }
}

}  // namespace ghill
