#include <doctest.h>

#include <cmath>
#include <limits>

#include "mellin/error.hpp"
#include "mellin/problem.hpp"

using namespace mellin;

TEST_CASE("valid shapes") {
  const Shape s(5, {3, 1});
  CHECK(s.degree() == 5);
  CHECK(s.dim() == 2);
  CHECK(s.exponent(0) == 3);
  CHECK(s.ratio(1) == doctest::Approx(0.2));
  CHECK(s.exponent_sum() == 4);
  CHECK_FALSE(s.describe().empty());
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(Shape(3, {1, 2}), InvalidInput);  // not decreasing
  CHECK_THROWS_AS(Shape(3, {2, 2}), InvalidInput);  // repeated
  CHECK_THROWS_AS(Shape(3, {3}), InvalidInput);     // n_1 = n
  CHECK_THROWS_AS(Shape(3, {0}), InvalidInput);     // n_p = 0
  CHECK_THROWS_AS(Shape(3, {}), InvalidInput);      // p = 0
  CHECK_THROWS_AS(Shape(1, {}), InvalidInput);
}

TEST_CASE("problem validation") {
  CHECK_NOTHROW(Problem(3, {2, 1}, {0.0, 4.0}));
  CHECK_THROWS_AS(Problem(3, {2, 1}, {1.0}), InvalidInput);
  CHECK_THROWS_AS(Problem(3, {2, 1}, {1.0, -0.5}), InvalidInput);
  CHECK_THROWS_AS(Problem(3, {2, 1}, {1.0, std::numeric_limits<double>::quiet_NaN()}), InvalidInput);
  CHECK_THROWS_AS(Problem(3, {2, 1}, {1.0, std::numeric_limits<double>::infinity()}), InvalidInput);
}

TEST_CASE("residual") {
  const Problem p(2, {1}, {1.5});
  CHECK(p.residual(0.5) == doctest::Approx(0.0));
  CHECK(p.residual(0.0) == -1.0);
}
