#include "ghill/plot_series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "ghill/errors.hpp"

namespace ghill {

void PlotSeries::add_curve(std::string name, std::vector<double> values) {
  if (values.size() != x.size()) {
    throw DomainError("plot series: curve '" + name + "' length differs from the x grid");
  }
  curves.emplace_back(std::move(name), std::move(values));
}

const std::vector<double>& PlotSeries::curve(const std::string& name) const {
  for (const auto& [n, v] : curves) {
    if (n == name) return v;
  }
  throw DomainError("plot series: no curve named '" + name + "'");
}

bool PlotSeries::has_curve(const std::string& name) const noexcept {
  return std::any_of(curves.begin(), curves.end(), [&](const auto& c) { return c.first == name; });
}

void PlotSeries::validate() const {
  for (const auto& [name, values] : curves) {
    if (values.size() != x.size()) throw DomainError("plot series: curve '" + name + "' has wrong length");
  }
  if (band) {
    if (band->lower.size() != x.size() || band->upper.size() != x.size()) {
      throw DomainError("plot series: band has wrong length");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (band->lower[i] > band->upper[i]) throw DomainError("plot series: band lower exceeds upper");
    }
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const PlotSeries& series) {
  series.validate();
  for (const auto& line : series.meta) out << "# " << line << '\n';
  out << "x";
  for (const auto& c : series.curves) out << ',' << c.first;
  if (series.band) out << ",band_lo,band_hi";
  out << '\n';
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    out << format_number(series.x[i]);
    for (const auto& c : series.curves) out << ',' << format_number(c.second[i]);
    if (series.band) {
      out << ',' << format_number(series.band->lower[i]) << ',' << format_number(series.band->upper[i]);
    }
    out << '\n';
  }
}

}  // namespace ghill
