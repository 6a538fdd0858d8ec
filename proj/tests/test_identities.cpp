#include <doctest.h>

#include <cmath>
#include <random>

#include "mellin/error.hpp"
#include "mellin/identities.hpp"

using namespace mellin;
using namespace mellin::identities;

TEST_CASE("rank-one determinant examples") {
  std::vector<ExactRational> zero(4, 0);
  CHECK(det_rank_one(zero) == 1);
  CHECK(det_cofactor(rank_one_matrix(zero)) == 1);
  std::vector<ExactRational> ones{1, 1};
  CHECK(det_rank_one(ones) == 3);
  CHECK(det_cofactor(rank_one_matrix(ones)) == 3);
  std::vector<ExactRational> y{1, 2, 3};
  CHECK(det_rank_one(y) == 7);
  CHECK(det_cofactor(rank_one_matrix(y)) == 7);
}

TEST_CASE("rank-one determinant equals cofactor expansion exactly") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> p_dist(1, 8), num(-20, 20), den(1, 12);
  for (int k = 0; k < 1000; ++k) {
    std::vector<ExactRational> y(p_dist(rng));
    for (auto& v : y) v = ExactRational(num(rng), den(rng));
    REQUIRE(det_rank_one(y) == det_cofactor(rank_one_matrix(y)));
  }
}

TEST_CASE("cofactor expansion on a general matrix") {
  ExactMatrix m{{2, 0, 1}, {1, 3, 2}, {1, 1, 1}};
  CHECK(det_cofactor(m) == 0);  // 2(3-2) - 0 + 1(1-3)
  ExactMatrix bad{{1, 2}, {3}};
  CHECK_THROWS_AS(det_cofactor(bad), InvalidInput);
}

TEST_CASE("Dirichlet integral examples") {
  const cplx one[] = {1.0};
  const auto r1 = dirichlet_integral(one, 2.0, 1e-8);
  CHECK(std::abs(r1.gamma_form - 1.0) < 1e-14);
  CHECK(std::abs(r1.numeric - 1.0) < 1e-8);
  CHECK(r1.passed);

  const cplx half[] = {0.5, 0.5};
  CHECK_THROWS_AS(dirichlet_integral(half, 1.0, 1e-6), DivergentParameters);

  const cplx two_vars[] = {0.3, 0.4};
  const auto r2 = dirichlet_integral(two_vars, 1.0, 1e-6);
  CHECK(std::abs(r2.gamma_form - 19.851385582420403253) < 1e-12);
  CHECK(r2.passed);
  CHECK(r2.rel_error <= 1e-6);
}

TEST_CASE("Dirichlet integral in three variables and with complex exponents") {
  const cplx u[] = {0.5, 0.7, 0.9};
  CHECK(dirichlet_integral(u, 3.0, 1e-6).passed);
  const cplx z[] = {cplx(0.6, 0.8)};
  const auto r = dirichlet_integral(z, 1.5, 1e-6);
  CHECK(r.passed);
  CHECK(std::abs(r.numeric.imag()) > 1e-3);
}

TEST_CASE("Dirichlet integral input errors") {
  const cplx neg[] = {-0.1};
  CHECK_THROWS_AS(dirichlet_integral(neg, 2.0, 1e-6), DivergentParameters);
  const cplx four[] = {0.2, 0.2, 0.2, 0.2};
  CHECK_THROWS_AS(dirichlet_integral(four, 2.0, 1e-6), InvalidInput);
}

TEST_CASE("I0 and Ii decomposition") {
  const double u1[] = {0.5};
  const auto d1 = i0_ii_decomposition_check(u1, 3.0, Shape(2, {1}), 1e-6);
  CHECK(d1.passed);
  CHECK(d1.total_gamma == doctest::Approx(d1.closed_form).epsilon(1e-13));
  CHECK(d1.closed_form == doctest::Approx(1.4983186024526398917).epsilon(1e-13));
  CHECK(d1.forward_lhs == doctest::Approx(d1.closed_form).epsilon(1e-6));

  const double u2[] = {0.7, 0.6};
  const auto d2 = i0_ii_decomposition_check(u2, 9.0, Shape(3, {2, 1}), 1e-6);
  CHECK(d2.passed);
  REQUIRE(d2.ii_gamma.size() == 2);
  CHECK(d2.i0_numeric == doctest::Approx(d2.i0_gamma).epsilon(1e-6));

  const double bad[] = {5.0};
  CHECK_THROWS_AS(i0_ii_decomposition_check(bad, 1.0, Shape(2, {1}), 1e-6), DivergentParameters);
}
