#pragma once

#include <cmath>
#include <functional>

#include "ghill/random.hpp"

namespace ghill::test {

/// Composite Simpson rule on [a, b] with n (even) panels. Deliberately
/// independent of the library quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Statistical checks get one retry with a seed derived from the first.
inline bool with_retry(Seed seed, const std::function<bool(Seed)>& check) {
  return check(seed) || check(Seed{mix64(seed.value ^ 0x9e3779b97f4a7c15ULL)});
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace ghill::test
