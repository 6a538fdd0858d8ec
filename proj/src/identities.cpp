#include "mellin/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mellin/error.hpp"
#include "mellin/gamma.hpp"
#include "mellin/mellin.hpp"

namespace mellin::identities {

ExactMatrix rank_one_matrix(std::span<const ExactRational> y) {
  const std::size_t p = y.size();
  ExactMatrix m(p, std::vector<ExactRational>(p));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) m[i][j] = y[i] + (i == j ? 1 : 0);
  }
  return m;
}

ExactRational det_rank_one(std::span<const ExactRational> y) {
  ExactRational acc = 1;
  for (const auto& v : y) acc += v;
  return acc;
}

ExactRational det_cofactor(const ExactMatrix& m) {
  const std::size_t p = m.size();
  if (p == 0) return 1;
  if (p > 20) throw InvalidInput("det_cofactor: matrix too large");
  for (const auto& row : m) {
    if (row.size() != p) throw InvalidInput("det_cofactor: matrix must be square");
  }
  // minor[mask] = det of rows (p - popcount(mask))..p-1 restricted to columns in mask.
  const unsigned full = (1u << p) - 1u;
  std::vector<ExactRational> minor(full + 1u);
  minor[0] = 1;
  for (unsigned mask = 1; mask <= full; ++mask) {
    const int k = __builtin_popcount(mask);
    const std::size_t row = p - static_cast<std::size_t>(k);
    ExactRational acc = 0;
    int sign = 1;
    for (std::size_t col = 0; col < p; ++col) {
      if (!(mask & (1u << col))) continue;
      const auto& entry = m[row][col];
      if (entry != 0) {
        const ExactRational term = entry * minor[mask & ~(1u << col)];
        if (sign > 0) acc += term; else acc -= term;
      }
      sign = -sign;
    }
    minor[mask] = acc;
  }
  return minor[full];
}

cplx dirichlet_gamma_form(std::span<const cplx> u, double omega) {
  cplx rest = omega;
  std::vector<cplx> num(u.begin(), u.end());
  for (const cplx& ui : u) rest -= ui;
  num.push_back(rest);
  const cplx den[1] = {cplx(omega, 0.0)};
  return gamma_ratio(num, den);
}

DirichletResult dirichlet_integral(std::span<const cplx> u, double omega, double tol) {
  const std::size_t p = u.size();
  if (p == 0 || p > 3) throw InvalidInput("Dirichlet integral supports 1 <= p <= 3");
  double slowest = std::numeric_limits<double>::infinity();
  cplx rest = omega;
  for (const cplx& ui : u) {
    if (!(ui.real() > 0.0)) throw DivergentParameters("Dirichlet integral needs Re u_i > 0");
    slowest = std::min(slowest, ui.real());
    rest -= ui;
  }
  if (!(rest.real() > 0.0)) {
    throw DivergentParameters("Dirichlet integral diverges: Re(omega - sum u_i) <= 0");
  }
  slowest = std::min(slowest, rest.real());

  std::vector<cplx> powers(u.begin(), u.end());
  auto integrand = [&](std::span<const double> log_xi) -> cplx {
    cplx log_value = -omega * quad::log1p_sum_exp(log_xi);
    for (std::size_t i = 0; i < p; ++i) log_value += powers[i] * log_xi[i];
    return std::exp(log_value);
  };

  quad::OrthantOptions opts;
  opts.rel_tol = 0.1 * tol;
  opts.log_xi_max = std::min(650.0, 45.0 / slowest);
  const QuadResult q = quad::integrate_orthant(p, integrand, opts);

  DirichletResult out;
  out.numeric = q.value;
  out.gamma_form = dirichlet_gamma_form(u, omega);
  out.quad_error = q.err_estimate;
  out.evaluations = q.evaluations;
  out.rel_error = std::abs(out.numeric - out.gamma_form) / std::abs(out.gamma_form);
  out.passed = out.rel_error <= tol;
  return out;
}

Decomposition i0_ii_decomposition_check(std::span<const double> u, double alpha,
                                        const Shape& shape, double tol) {
  const std::size_t p = shape.dim();
  if (u.size() != p) throw InvalidInput("u has the wrong dimension");
  mb::MellinParams params{alpha, std::vector<cplx>(u.begin(), u.end())};
  mb::check_admissible(shape, params);
  const double n = shape.degree();
  const double lead = mb::derived_u(shape, alpha, params.u).real();
  const double om = mb::omega(shape, alpha, params.u).real();

  Decomposition out;
  out.i0_gamma = dirichlet_gamma_form(params.u, om).real();
  out.total_gamma = out.i0_gamma;
  double worst = 0.0;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };

  for (std::size_t i = 0; i < p; ++i) {
    auto bumped = params.u;
    bumped[i] += 1.0;
    const double ii = shape.ratio(i) * dirichlet_gamma_form(bumped, om).real();
    out.ii_gamma.push_back(ii);
    out.total_gamma += ii;
    worst = std::max(worst, rel(ii, shape.exponent(i) * u[i] / (n * lead) * out.i0_gamma));
  }
  out.closed_form = mb::kernel(shape, alpha, params.u).real();
  worst = std::max(worst, rel(out.total_gamma, alpha / (n * lead) * out.i0_gamma));
  worst = std::max(worst, rel(out.total_gamma, out.closed_form));

  const auto i0 = dirichlet_integral(params.u, om, tol);
  out.i0_numeric = i0.numeric.real();
  worst = std::max(worst, rel(out.i0_numeric, out.i0_gamma));
  double total_numeric = out.i0_numeric;
  for (std::size_t i = 0; i < p; ++i) {
    auto bumped = params.u;
    bumped[i] += 1.0;
    const double ii = shape.ratio(i) * dirichlet_integral(bumped, om, tol).numeric.real();
    out.ii_numeric.push_back(ii);
    total_numeric += ii;
    worst = std::max(worst, rel(ii, out.ii_gamma[i]));
  }
  worst = std::max(worst, rel(total_numeric, out.closed_form));

  if (p <= 2) {
    out.forward_lhs = mb::forward_mellin_check(shape, params, tol).lhs;
    worst = std::max(worst, rel(out.forward_lhs, total_numeric));
  }
  out.max_rel_error = worst;
  out.passed = worst <= tol;
  return out;
}

}  // namespace mellin::identities
