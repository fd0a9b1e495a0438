#pragma once

#include <cstddef>
#include <utility>

#include "ghill/estimators.hpp"

namespace ghill {

/// The dimensionless product p * gamma that every moment below depends on.
struct PGamma {
  double x = 0.0;

  static PGamma of(double p, double gamma) noexcept { return {p * gamma}; }
};

// Moments of U^{-x} and ln U^{-gamma} for U ~ U(0, 1).

/// E U^{-s x} = 1 / (1 - s x); requires s x < 1.
double moment_u_power(int s, PGamma pg);
/// Var U^{-x} = x^2 / ((1 - 2x)(1 - x)^2); requires x < 1/2.
double variance_u_power(PGamma pg);

struct LogMoments {
  double mean;
  double variance;
};
/// Mean and variance of ln U^{-gamma}: (gamma, gamma^2).
LogMoments log_moments(double gamma);

/// Asymptotic standard deviation of the generalized Hill estimator,
/// gamma (1 - p gamma) / sqrt(1 - 2 p gamma); requires p gamma < 1/2.
double asymptotic_sd(double p, double gamma);

/// Standardized third moment E Z^3 of Z = (U^{-x} - E U^{-x}) / sd, x < 1/3.
/// Equals 2 sgn(x) sqrt(1 - 2x)(1 + x) / (1 - 3x); at x = 0 the log
/// (Hill) case gives 2.
double third_central_moment_std(PGamma pg);

/// Berry-Esseen moment phi = E|Z|^3, x < 1/3; phi(0) = 12/e - 2.
double berry_esseen_phi(PGamma pg);

struct OptimalP {
  double p;
  /// Minimizing value of p * gamma (independent of gamma).
  double x;
  double phi;
};

/// Minimizer of phi over p gamma in (-50, 1/3): coarse scan + golden section.
OptimalP optimal_p_berry_esseen(double gamma);

/// (x_low, 0): the p gamma range where phi is below its Hill value phi(0).
std::pair<double, double> berry_esseen_superiority_interval();

/// Closed-form optimal p of the Paulauskas-Vaiciulis estimator under 2RV.
double paulauskas_p_star(double gamma, double rho);

/// (gamma_hat / (z/sqrt(k) + 1), gamma_hat / (1 - z/sqrt(k))), z the
/// (1 + level)/2 normal quantile. Throws DomainError unless sqrt(k) > z.
ConfidenceInterval confidence_interval(double gamma_hat, std::size_t k, double level);

/// True when confidence_interval(., k, level) is defined.
bool confidence_interval_defined(std::size_t k, double level);

enum class StatisticKind {
  /// sqrt(k)(gamma_hat_0 - gamma) / gamma
  hill,
  /// sqrt(k)(H - 1/(1 - x)) / (|x| / (sqrt(1 - 2x)(1 - x)))
  h,
  /// sqrt(k)(gamma_hat_p - gamma) / f(p)
  gh,
};

/// z-value of an estimate under the asymptotic normal law.
double normalized_statistic(double value, StatisticKind kind, std::size_t k, double p, double gamma);

/// Fills std_err = f(p)/sqrt(k) at the plug-in gamma_hat and, when defined,
/// the interval at `level`.
void attach_asymptotics(EstimateResult& result, double level);

}  // namespace ghill
