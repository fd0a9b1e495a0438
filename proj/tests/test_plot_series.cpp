#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "ghill/errors.hpp"
#include "ghill/plot_series.hpp"

using namespace ghill;

TEST_CASE("shortest round-trip numbers") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_number(std::nan("")) == "");
  for (double v : {0.0829191708354674, 1.0 / 3.0, 6.02214076e23, -2.5e-7}) CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("csv layout") {
  PlotSeries s;
  s.x = {1.0, 2.0};
  s.add_curve("a", {0.5, std::numeric_limits<double>::quiet_NaN()});
  s.add_curve("b", {3.0, 4.0});
  s.band = PlotSeries::Band{{0.1, 0.2}, {0.9, 1.0}};
  s.meta = {"source=test"};
  std::ostringstream os;
  write_csv(os, s);
  CHECK(os.str() == "# source=test\nx,a,b,band_lo,band_hi\n1,0.5,3,0.1,0.9\n2,,4,0.2,1\n");
}

TEST_CASE("validation") {
  PlotSeries s;
  s.x = {1.0, 2.0};
  CHECK_THROWS_AS(s.add_curve("short", {1.0}), DomainError);
  s.add_curve("ok", {1.0, 2.0});
  CHECK(s.has_curve("ok"));
  CHECK_FALSE(s.has_curve("missing"));
  CHECK_THROWS_AS(s.curve("missing"), DomainError);
  s.band = PlotSeries::Band{{0.0, 2.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.band = PlotSeries::Band{{0.0}, {1.0}};
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.band = PlotSeries::Band{{std::nan(""), 0.0}, {std::nan(""), 1.0}};
  CHECK_NOTHROW(s.validate());
}
