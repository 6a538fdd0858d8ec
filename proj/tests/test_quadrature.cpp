#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mellin/error.hpp"
#include "mellin/quadrature.hpp"

using namespace mellin;

TEST_CASE("compensated summation recovers cancelled terms") {
  CompensatedSum<double> s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
  CompensatedSum<cplx> c;
  c.add({1e16, -1e16});
  c.add({1.0, 2.0});
  c.add({-1e16, 1e16});
  CHECK(c.value() == cplx(1.0, 2.0));
}

TEST_CASE("half-line nodes are symmetric in log xi") {
  const auto nodes = quad::half_line_nodes(0.25, 50.0);
  REQUIRE(nodes.size() % 2 == 1);
  const std::size_t mid = nodes.size() / 2;
  CHECK(nodes[mid].log_xi == 0.0);
  for (std::size_t k = 0; k < mid; ++k) {
    CHECK(nodes[k].log_xi == doctest::Approx(-nodes[nodes.size() - 1 - k].log_xi));
    CHECK(nodes[k].weight == doctest::Approx(nodes[nodes.size() - 1 - k].weight));
  }
  for (const auto& n : nodes) CHECK(std::abs(n.log_xi) <= 50.0);
}

TEST_CASE("integrate_orthant on elementary integrals") {
  // int_0^inf dxi / (1 + xi)^2 = 1
  auto one = quad::integrate_orthant(1, [](std::span<const double> L) {
    const double xi = std::exp(L[0]);
    return cplx(xi / ((1 + xi) * (1 + xi)));
  });
  CHECK(std::abs(one.value - 1.0) < 1e-10);
  CHECK(one.evaluations > 0);

  // int_0^inf xi^{-1/2} / (1 + xi) dxi = pi
  auto pi_val = quad::integrate_orthant(1, [](std::span<const double> L) {
    return cplx(std::exp(0.5 * L[0] - quad::log1p_sum_exp(L)));
  });
  CHECK(std::abs(pi_val.value - std::numbers::pi) < 1e-9);

  // separable product over the quadrant: (int e^{-xi} dxi)^2 = 1
  auto sep = quad::integrate_orthant(2, [](std::span<const double> L) {
    return cplx(std::exp(L[0] + L[1] - std::exp(L[0]) - std::exp(L[1])));
  });
  CHECK(std::abs(sep.value - 1.0) < 1e-9);
}

TEST_CASE("integrate_orthant errors") {
  CHECK_THROWS_AS(quad::integrate_orthant(0, [](std::span<const double>) { return cplx(1.0); }), InvalidInput);
  quad::OrthantOptions tight;
  tight.max_levels = 1;
  tight.rel_tol = 1e-15;
  // oscillatory integrand that cannot settle in one level
  CHECK_THROWS_AS(quad::integrate_orthant(
                      1, [](std::span<const double> L) { return cplx(std::exp(L[0] - std::exp(L[0])) * std::cos(20 * L[0])); },
                      tight),
                  ConvergenceError);
}

TEST_CASE("log1p_sum_exp") {
  const double small[] = {std::log(2.0), std::log(3.0)};
  CHECK(quad::log1p_sum_exp(small) == doctest::Approx(std::log(6.0)));
  const double huge[] = {1000.0, 1000.0};
  CHECK(quad::log1p_sum_exp(huge) == doctest::Approx(1000.0 + std::log(2.0)));
  const double tiny[] = {-800.0};
  CHECK(quad::log1p_sum_exp(tiny) == 0.0);
}
