#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "necklace/extended_real.hpp"

using necklace::ExtendedReal;

TEST_CASE("extended reals are totally ordered with infinities at the ends") {
  const ExtendedReal ninf = ExtendedReal::neg_inf();
  const ExtendedReal pinf = ExtendedReal::pos_inf();
  const ExtendedReal a(-5.0), b(0.0), c(5.0);

  REQUIRE(ninf < a);
  REQUIRE(a < b);
  REQUIRE(b < c);
  REQUIRE(c < pinf);
  REQUIRE(ninf < pinf);
  REQUIRE(pinf > ninf);
  REQUIRE(a <= ExtendedReal(-5.0));
  REQUIRE(a >= ExtendedReal(-5.0));
  REQUIRE(a == ExtendedReal(-5.0));
  REQUIRE(a != b);
  REQUIRE(pinf == ExtendedReal::pos_inf());
}

TEST_CASE("extended real construction rejects NaN") {
  REQUIRE_THROWS_AS(ExtendedReal(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

TEST_CASE("finiteness predicate") {
  REQUIRE(ExtendedReal(3.5).is_finite());
  REQUIRE(ExtendedReal(0.0).is_finite());
  REQUIRE_FALSE(ExtendedReal::pos_inf().is_finite());
  REQUIRE_FALSE(ExtendedReal::neg_inf().is_finite());
}

TEST_CASE("subtraction follows the sentinel rules") {
  const ExtendedReal ninf = ExtendedReal::neg_inf();
  const ExtendedReal pinf = ExtendedReal::pos_inf();

  REQUIRE((ExtendedReal(7.0) - ExtendedReal(2.5)).value() == 4.5);
  REQUIRE(pinf - ExtendedReal(100.0) == pinf);
  REQUIRE(ExtendedReal(1.0) - ninf == pinf);
  REQUIRE(ExtendedReal(1.0) - pinf == ninf);
  REQUIRE(ninf - ExtendedReal(1.0) == ninf);
  REQUIRE(pinf - ninf == pinf);
  REQUIRE(ninf - pinf == ninf);

  REQUIRE_THROWS_AS(pinf - pinf, std::domain_error);
  REQUIRE_THROWS_AS(ninf - ninf, std::domain_error);
}

TEST_CASE("negation is exact") {
  REQUIRE((-ExtendedReal(3.0)).value() == -3.0);
  REQUIRE(-ExtendedReal::pos_inf() == ExtendedReal::neg_inf());
  REQUIRE(-ExtendedReal::neg_inf() == ExtendedReal::pos_inf());
}

TEST_CASE("lift and lower round trip") {
  const std::vector<double> v{1.0, -2.5, std::numeric_limits<double>::infinity()};
  const std::vector<ExtendedReal> lifted = necklace::lift(v);
  REQUIRE(lifted.size() == 3);
  REQUIRE(lifted[2] == ExtendedReal::pos_inf());
  const std::vector<double> back = necklace::lower(lifted);
  REQUIRE(back == v);
}
