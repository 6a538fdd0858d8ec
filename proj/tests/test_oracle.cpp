#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mellin/error.hpp"
#include "mellin/oracle.hpp"

using namespace mellin;
using oracle::cplx;

namespace {

Problem random_problem(std::mt19937_64& rng, int max_p, int max_n, double max_coeff) {
  std::uniform_int_distribution<int> pick_n(2, max_n);
  const int n = pick_n(rng);
  const int p = std::uniform_int_distribution<int>(1, std::min(max_p, n - 1))(rng);
  std::vector<int> pool(n - 1);
  for (int k = 0; k < n - 1; ++k) pool[k] = k + 1;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<int> exps(pool.begin(), pool.begin() + p);
  std::sort(exps.rbegin(), exps.rend());
  std::vector<double> x(p);
  std::uniform_real_distribution<double> coeff(0.0, max_coeff);
  for (auto& v : x) v = coeff(rng);
  return Problem(n, exps, x);
}

}  // namespace

TEST_CASE("principal_root examples") {
  CHECK(oracle::principal_root(Problem(5, {3, 1}, {0, 0})) == 1.0);
  CHECK(std::abs(oracle::principal_root(Problem(2, {1}, {1})) - 0.6180339887498948482) < 1e-15);
  CHECK(std::abs(oracle::principal_root(Problem(2, {1}, {1.5})) - 0.5) < 1e-15);
  CHECK(std::abs(oracle::principal_root(Problem(2, {1}, {0.2})) - 0.90498756211208902589) < 1e-15);
}

TEST_CASE("principal_root handles extreme coefficients") {
  const double z = oracle::principal_root(Problem(3, {2, 1}, {1e8, 1e-8}));
  CHECK(z > 0.0);
  CHECK(std::abs(Problem(3, {2, 1}, {1e8, 1e-8}).residual(z)) < 1e-12);
  const double tiny = oracle::principal_root(Problem(4, {1}, {1e-300}));
  CHECK(tiny == doctest::Approx(1.0));
}

TEST_CASE("principal_root residual, range and uniqueness over random problems") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10000; ++k) {
    const Problem prob = random_problem(rng, 5, 12, 10.0);
    const double z = oracle::principal_root(prob);
    CAPTURE(prob.describe());
    REQUIRE(z > 0.0);
    REQUIRE(z <= 1.0);
    REQUIRE(std::abs(prob.residual(z)) <= 1e-12);
  }
}

TEST_CASE("principal_root equals 1 only at zero coefficients") {
  CHECK(oracle::principal_root(Problem(4, {3, 2, 1}, {0, 0, 0})) == 1.0);
  CHECK(oracle::principal_root(Problem(4, {3, 2, 1}, {0, 1e-6, 0})) < 1.0);
}

TEST_CASE("principal_root decreases in each coefficient") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> bump(0.01, 2.0);
  for (int k = 0; k < 2000; ++k) {
    const Problem prob = random_problem(rng, 4, 9, 5.0);
    std::vector<double> x(prob.coeffs().begin(), prob.coeffs().end());
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, x.size() - 1)(rng);
    x[i] += bump(rng);
    const Problem bigger(prob.shape(), x);
    REQUIRE(oracle::principal_root(bigger) < oracle::principal_root(prob));
  }
}

TEST_CASE("all_roots of unity and Vieta") {
  auto quad = oracle::all_roots(Problem(2, {1}, {0}));
  const cplx pm[] = {1.0, -1.0};
  CHECK(oracle::multiset_distance(quad.roots, pm) < 1e-14);
  CHECK(std::abs(quad.roots[quad.principal_index] - 1.0) < 1e-14);

  auto cubic = oracle::all_roots(Problem(3, {1}, {0}));
  std::vector<cplx> unity;
  for (int k = 0; k < 3; ++k) unity.push_back(std::polar(1.0, 2 * std::numbers::pi * k / 3));
  CHECK(oracle::multiset_distance(cubic.roots, unity) < 1e-14);

  // Z^4 + 0.3 Z^2 + 0.2 Z - 1: sum of roots 0, product -1
  auto quartic = oracle::all_roots(Problem(4, {2, 1}, {0.3, 0.2}));
  REQUIRE(quartic.roots.size() == 4);
  cplx sum = 0, prod = 1, pairs = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    sum += quartic.roots[i];
    prod *= quartic.roots[i];
    for (std::size_t j = i + 1; j < 4; ++j) pairs += quartic.roots[i] * quartic.roots[j];
  }
  CHECK(std::abs(sum) < 1e-13);
  CHECK(std::abs(prod + 1.0) < 1e-13);
  CHECK(std::abs(pairs - 0.3) < 1e-13);
  const cplx principal = quartic.roots[quartic.principal_index];
  CHECK(std::abs(principal.imag()) < 1e-14);
  CHECK(std::abs(principal.real() - oracle::principal_root(Problem(4, {2, 1}, {0.3, 0.2}))) < 1e-13);
}

TEST_CASE("epsilon_family examples") {
  auto unity = oracle::epsilon_family(Problem(5, {2}, {0}));
  auto direct = oracle::all_roots(Problem(5, {2}, {0}));
  CHECK(oracle::multiset_distance(unity, direct.roots) < 1e-12);

  auto quad = oracle::epsilon_family(Problem(2, {1}, {0.1}));
  const cplx expected[] = {0.951249219725039257, -1.0512492197250392625};
  CHECK(oracle::multiset_distance(quad, expected) < 1e-12);

  const Problem cubic(3, {2, 1}, {0.1, 0.1});
  CHECK(oracle::multiset_distance(oracle::epsilon_family(cubic), oracle::all_roots(cubic).roots) < 1e-9);
}

TEST_CASE("epsilon_family equals the companion roots on random small problems") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 100; ++k) {
    Problem prob = random_problem(rng, 3, 8, 1.0);
    std::vector<double> x(prob.coeffs().begin(), prob.coeffs().end());
    double total = 0;
    for (double v : x) total += v;
    for (auto& v : x) v *= 0.45 / std::max(total, 0.45);
    const Problem small(prob.shape(), x);
    CAPTURE(small.describe());
    REQUIRE(oracle::multiset_distance(oracle::epsilon_family(small), oracle::all_roots(small).roots) <= 1e-9);
  }
}

TEST_CASE("epsilon_family rejects large coefficients") {
  CHECK_THROWS_AS(oracle::epsilon_family(Problem(3, {1}, {0.6})), InvalidInput);
}

TEST_CASE("multiset_distance") {
  const cplx a[] = {1.0, 2.0, cplx(0, 1)};
  const cplx b[] = {cplx(0, 1), 2.0, 1.0 + 1e-3};
  CHECK(oracle::multiset_distance(a, b) == doctest::Approx(1e-3));
  const cplx c[] = {1.0};
  CHECK(std::isinf(oracle::multiset_distance(a, c)));
}
