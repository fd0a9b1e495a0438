#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ghill/random.hpp"

namespace ghill {

/// F(x) = 1 - (delta / x)^alpha, x >= delta.
struct Pareto {
  double alpha;
  double delta;
};

/// F(x) = 1 - (1 + x^rho) / (2 x^alpha), x >= 1.
struct HallWeiss {
  double alpha;
  double rho;
};

/// Defined through its quantile F^{-1}(u) = -(1 - u)^{-1/alpha} ln(1 - u).
struct HillHorror {
  double alpha;
};

/// F(x) = 1 - (1 + ln x) / x, x >= 1.
struct LogErlang21 {};

/// F(x) = 1 - e ln(x) / x, x >= e.
struct SlowVarLog {};

/// An immutable heavy-tailed law with regularly varying tail.
class TailModel {
 public:
  using Variant = std::variant<Pareto, HallWeiss, HillHorror, LogErlang21, SlowVarLog>;

  static TailModel pareto(double alpha, double delta = 1.0);
  static TailModel hall_weiss(double alpha, double rho);
  static TailModel hill_horror(double alpha);
  static TailModel log_erlang21();
  static TailModel slow_var_log();

  const Variant& variant() const noexcept { return variant_; }

  /// Lower support endpoint. Zero for HillHorror, whose quantile starts at 0.
  double x_min() const noexcept;
  /// Tail index alpha (1 for the two logarithmic models).
  double alpha() const noexcept;
  /// Extreme value index 1 / alpha.
  double gamma() const noexcept { return 1.0 / alpha(); }

  bool is_pareto() const noexcept { return std::holds_alternative<Pareto>(variant_); }

  /// Canonical spec string, e.g. "hallweiss:alpha=1,rho=-1".
  std::string spec() const;

 private:
  explicit TailModel(Variant v) : variant_(v) {}
  Variant variant_;
};

/// Parses "name[:key=value,...]"; throws DomainError on malformed input.
TailModel parse_model_spec(std::string_view spec);

enum class InverseMethod {
  /// Closed form where one is known, bisection otherwise.
  automatic,
  /// Always bracket-and-bisect on the tail.
  bisection,
};

/// Survival function 1 - F(x); 1 at and below x_min.
double tail(const TailModel& model, double x);
double cdf(const TailModel& model, double x);
double density(const TailModel& model, double x);

/// Left-continuous generalized inverse of F, u in [0, 1).
double quantile(const TailModel& model, double u);

/// The x with tail(x) = v for v in (0, 1], computed without forming 1 - v.
double upper_quantile(const TailModel& model, double v,
                      InverseMethod method = InverseMethod::automatic);

/// Inverse of 1 / tail: b(t) = upper_quantile(1 / t), t >= 1.
double b_function(const TailModel& model, double t,
                  InverseMethod method = InverseMethod::automatic);

/// U(n) = F^{-1}(1 - 1/n), n > 1.
double u_function(const TailModel& model, double n);

/// True when b_function has an analytic route for this model.
bool has_closed_form_b(const TailModel& model) noexcept;

/// n i.i.d. draws by inverse transform of a stream keyed by seed.
std::vector<double> sample(const TailModel& model, std::size_t n, Seed seed);

}  // namespace ghill
