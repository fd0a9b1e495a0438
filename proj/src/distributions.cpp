#include "ghill/distributions.hpp"

#include <charconv>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "ghill/errors.hpp"
#include "ghill/special_functions.hpp"

namespace ghill {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kE = std::numbers::e;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("tail model: ") + what + " must be positive and finite");
  }
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// HillHorror: tail level v solving -v^{-gamma} ln v = x, found by bisection
// on w = ln v so tiny tails keep full relative precision.
double hill_horror_tail(double gamma, double x) {
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double log_x = std::log(x);
  auto excess = [&](double w) { return std::log(-w) - gamma * w - log_x; };
  double lo = -1.0;
  while (excess(lo) < 0.0) {
    lo *= 2.0;
    if (lo < -1e6) return 0.0;
  }
  double hi = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (excess(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

double hill_horror_upper_quantile(double gamma, double v) {
  if (v >= 1.0) return 0.0;
  return -std::pow(v, -gamma) * std::log(v);
}

// Bracket by doubling from x_min, then bisect on log tail. Returns the upper
// end of the final bracket so that tail(result) <= v.
double upper_quantile_bisection(const TailModel& model, double v) {
  const double x0 = model.x_min();
  if (v >= 1.0) return x0;
  const double log_v = std::log(v);
  auto above = [&](double x) { return std::log(tail(model, x)) > log_v; };
  double lo = x0;
  double hi = std::max(2.0 * x0, 1.0);
  while (above(hi)) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NumericalError("upper_quantile: bracket overflow", v);
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (above(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

// Largest real root of 2 b^3 - t b - t = 0 by Cardano with complex cube
// roots: b = c/6 + t/c, c^3 = 54 t + 6 sqrt(81 t^2 - 6 t^3).
double hall_weiss_2_1(double t) {
  using C = std::complex<double>;
  const C radicand = C(81.0 - 6.0 * t, 0.0);
  const C c3 = t * (C(54.0, 0.0) + 6.0 * std::sqrt(radicand));
  const C c = std::pow(c3, 1.0 / 3.0);
  return (c / 6.0 + t / c).real();
}

// Largest real root of 2 b^3 - t b^2 - t = 0:
// b = c/6 + t^2/(6c) + t/6, c^3 = 54 t + t^3 + 6 sqrt(81 t^2 + 3 t^4).
double hall_weiss_1_2(double t) {
  const double c3 = t * (54.0 + t * t + 6.0 * std::sqrt(81.0 + 3.0 * t * t));
  const double c = std::cbrt(c3);
  return c / 6.0 + t * t / (6.0 * c) + t / 6.0;
}

double closed_form_upper_quantile(const TailModel& model, double v, bool& available) {
  available = true;
  return std::visit(
      Overloaded{
          [&](const Pareto& m) { return m.delta * std::pow(v, -1.0 / m.alpha); },
          [&](const HallWeiss& m) {
            const double t = 1.0 / v;
            if (m.alpha == 1.0 && m.rho == -1.0) {
              return t * (1.0 + std::sqrt(1.0 + 8.0 / t)) / 4.0;
            }
            if (m.alpha == 2.0 && m.rho == -1.0) return hall_weiss_2_1(t);
            if (m.alpha == 1.0 && m.rho == -2.0) return hall_weiss_1_2(t);
            available = false;
            return 0.0;
          },
          [&](const HillHorror& m) { return hill_horror_upper_quantile(1.0 / m.alpha, v); },
          [&](const LogErlang21&) {
            // b = exp(-W(-1/(e t)) - 1) on the branch with b >= 1.
            return std::exp(-detail::lambert_wm1(-v / kE) - 1.0);
          },
          [&](const SlowVarLog&) {
            // b = -e t W(-1/(e t)) = exp(-W(-1/(e t))) on the branch with b >= e.
            return std::exp(-detail::lambert_wm1(-v / kE));
          },
      },
      model.variant());
}

}  // namespace

TailModel TailModel::pareto(double alpha, double delta) {
  require_positive(alpha, "alpha");
  require_positive(delta, "delta");
  return TailModel(Pareto{alpha, delta});
}

TailModel TailModel::hall_weiss(double alpha, double rho) {
  require_positive(alpha, "alpha");
  if (!(rho < 0.0) || !std::isfinite(rho)) throw DomainError("tail model: rho must be negative");
  return TailModel(HallWeiss{alpha, rho});
}

TailModel TailModel::hill_horror(double alpha) {
  require_positive(alpha, "alpha");
  return TailModel(HillHorror{alpha});
}

TailModel TailModel::log_erlang21() { return TailModel(LogErlang21{}); }

TailModel TailModel::slow_var_log() { return TailModel(SlowVarLog{}); }

double TailModel::x_min() const noexcept {
  return std::visit(Overloaded{
                        [](const Pareto& m) { return m.delta; },
                        [](const HallWeiss&) { return 1.0; },
                        [](const HillHorror&) { return 0.0; },
                        [](const LogErlang21&) { return 1.0; },
                        [](const SlowVarLog&) { return kE; },
                    },
                    variant_);
}

double TailModel::alpha() const noexcept {
  return std::visit(Overloaded{
                        [](const Pareto& m) { return m.alpha; },
                        [](const HallWeiss& m) { return m.alpha; },
                        [](const HillHorror& m) { return m.alpha; },
                        [](const LogErlang21&) { return 1.0; },
                        [](const SlowVarLog&) { return 1.0; },
                    },
                    variant_);
}

std::string TailModel::spec() const {
  return std::visit(
      Overloaded{
          [](const Pareto& m) {
            return "pareto:alpha=" + format_double(m.alpha) + ",delta=" + format_double(m.delta);
          },
          [](const HallWeiss& m) {
            return "hallweiss:alpha=" + format_double(m.alpha) + ",rho=" + format_double(m.rho);
          },
          [](const HillHorror& m) { return "hillhorror:alpha=" + format_double(m.alpha); },
          [](const LogErlang21&) { return std::string("logerlang21"); },
          [](const SlowVarLog&) { return std::string("slowvarlog"); },
      },
      variant_);
}

TailModel parse_model_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  std::map<std::string, double> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw DomainError("model spec: expected key=value, got '" + std::string(item) + "'");
      }
      const std::string key(item.substr(0, eq));
      const std::string_view text = item.substr(eq + 1);
      double value = 0.0;
      const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
      if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw DomainError("model spec: bad number for '" + key + "'");
      }
      if (!params.emplace(key, value).second) throw DomainError("model spec: duplicate key '" + key + "'");
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }

  auto take = [&](const char* key, std::optional<double> fallback = std::nullopt) {
    const auto it = params.find(key);
    if (it == params.end()) {
      if (fallback) return *fallback;
      throw DomainError("model spec: '" + name + "' requires " + key);
    }
    const double v = it->second;
    params.erase(it);
    return v;
  };
  auto finish = [&](TailModel m) {
    if (!params.empty()) throw DomainError("model spec: unknown key '" + params.begin()->first + "'");
    return m;
  };

  if (name == "pareto") {
    const double alpha = take("alpha");
    const double delta = take("delta", 1.0);
    return finish(TailModel::pareto(alpha, delta));
  }
  if (name == "hallweiss") {
    const double alpha = take("alpha");
    const double rho = take("rho");
    return finish(TailModel::hall_weiss(alpha, rho));
  }
  if (name == "hillhorror") return finish(TailModel::hill_horror(take("alpha")));
  if (name == "logerlang21") return finish(TailModel::log_erlang21());
  if (name == "slowvarlog") return finish(TailModel::slow_var_log());
  throw DomainError("model spec: unknown model '" + name + "'");
}

double tail(const TailModel& model, double x) {
  if (std::isnan(x)) throw DomainError("tail: NaN argument");
  if (std::isinf(x)) return x > 0.0 ? 0.0 : 1.0;
  return std::visit(Overloaded{
                        [&](const Pareto& m) { return x <= m.delta ? 1.0 : std::pow(m.delta / x, m.alpha); },
                        [&](const HallWeiss& m) {
                          return x <= 1.0 ? 1.0 : (1.0 + std::pow(x, m.rho)) / (2.0 * std::pow(x, m.alpha));
                        },
                        [&](const HillHorror& m) { return hill_horror_tail(1.0 / m.alpha, x); },
                        [&](const LogErlang21&) { return x <= 1.0 ? 1.0 : (1.0 + std::log(x)) / x; },
                        [&](const SlowVarLog&) { return x <= kE ? 1.0 : kE * std::log(x) / x; },
                    },
                    model.variant());
}

double cdf(const TailModel& model, double x) { return 1.0 - tail(model, x); }

double density(const TailModel& model, double x) {
  if (std::isnan(x)) throw DomainError("density: NaN argument");
  if (std::isinf(x)) return 0.0;
  return std::visit(
      Overloaded{
          [&](const Pareto& m) {
            return x < m.delta ? 0.0 : m.alpha * std::pow(m.delta / x, m.alpha) / x;
          },
          [&](const HallWeiss& m) {
            if (x < 1.0) return 0.0;
            return 0.5 * (m.alpha * std::pow(x, -m.alpha - 1.0) +
                          (m.alpha - m.rho) * std::pow(x, m.rho - m.alpha - 1.0));
          },
          [&](const HillHorror& m) {
            if (!(x > 0.0)) return 0.0;
            // f(x) = 1 / Q'(u) with Q'(u) = v^{-gamma-1} (1 - gamma ln v), v = 1 - u.
            const double gamma = 1.0 / m.alpha;
            const double v = hill_horror_tail(gamma, x);
            if (v == 0.0) return 0.0;
            return std::pow(v, gamma + 1.0) / (1.0 - gamma * std::log(v));
          },
          [&](const LogErlang21&) { return x < 1.0 ? 0.0 : std::log(x) / (x * x); },
          [&](const SlowVarLog&) { return x < kE ? 0.0 : kE * (std::log(x) - 1.0) / (x * x); },
      },
      model.variant());
}

bool has_closed_form_b(const TailModel& model) noexcept {
  if (const auto* hw = std::get_if<HallWeiss>(&model.variant())) {
    return (hw->alpha == 1.0 && hw->rho == -1.0) || (hw->alpha == 2.0 && hw->rho == -1.0) ||
           (hw->alpha == 1.0 && hw->rho == -2.0);
  }
  return true;
}

double upper_quantile(const TailModel& model, double v, InverseMethod method) {
  if (!(v > 0.0 && v <= 1.0)) throw DomainError("upper_quantile: tail level must lie in (0, 1]");
  if (v == 1.0) return model.x_min();
  if (method == InverseMethod::automatic) {
    bool available = false;
    const double x = closed_form_upper_quantile(model, v, available);
    if (available && std::isfinite(x)) return x;
  }
  return upper_quantile_bisection(model, v);
}

double quantile(const TailModel& model, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("quantile: level must lie in [0, 1)");
  return upper_quantile(model, 1.0 - u);
}

double b_function(const TailModel& model, double t, InverseMethod method) {
  if (!(t >= 1.0) || std::isinf(t)) throw DomainError("b_function: t must be at least 1/tail(x_min) = 1");
  return upper_quantile(model, 1.0 / t, method);
}

double u_function(const TailModel& model, double n) {
  if (!(n > 1.0) || std::isinf(n)) throw DomainError("u_function: n must exceed 1");
  return upper_quantile(model, 1.0 / n);
}

std::vector<double> sample(const TailModel& model, std::size_t n, Seed seed) {
  if (n == 0) throw DomainError("sample: n must be positive");
  UniformStream stream(seed);
  std::vector<double> out(n);
  // 1 - U is uniform too, so the draw maps straight onto the tail level.
  for (auto& x : out) x = upper_quantile(model, stream.next());
  return out;
}

}  // namespace ghill
