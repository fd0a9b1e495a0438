#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ghill {

/// x-grid with named curves and an optional band, emitted as one CSV file.
/// NaN entries mark points where a curve or band is undefined.
struct PlotSeries {
  struct Band {
    std::vector<double> lower;
    std::vector<double> upper;
  };

  std::string x_label = "x";
  std::vector<double> x;
  std::vector<std::pair<std::string, std::vector<double>>> curves;
  std::optional<Band> band;
  std::vector<std::string> meta;

  /// Appends a curve; throws DomainError when its length differs from x.
  void add_curve(std::string name, std::vector<double> values);
  const std::vector<double>& curve(const std::string& name) const;
  bool has_curve(const std::string& name) const noexcept;

  /// Throws DomainError on length mismatches or a band with lower > upper.
  void validate() const;
};

/// CSV: '#'-prefixed meta lines, a header `x,<curves...>[,band_lo,band_hi]`,
/// then one row per grid point in shortest round-trip decimal. NaN cells
/// are left empty.
void write_csv(std::ostream& out, const PlotSeries& series);

/// Shortest decimal string that parses back to the same double.
std::string format_number(double v);

}  // namespace ghill
