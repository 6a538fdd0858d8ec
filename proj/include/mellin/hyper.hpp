#pragma once

#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mellin/problem.hpp"

namespace mellin::hyper {

using cplx = std::complex<double>;
using Rational = boost::rational<std::int64_t>;

/// c_1 u_1 + ... + c_p u_p + a with rational c_i.
struct LinearFactor {
  std::vector<Rational> coeffs;
  double offset = 0.0;

  cplx operator()(std::span<const cplx> u) const;
  std::string describe() const;
};

/// Factors of the shift ratio F(u + n e_s) / F(u) = prod f / prod g.
struct FactorPair {
  std::size_t index = 0;  ///< s, zero based
  std::vector<LinearFactor> f;
  std::vector<LinearFactor> g;

  cplx ratio(std::span<const cplx> u) const;
  /// Order of the PDE this pair generates: max(deg f, deg g).
  std::size_t order() const noexcept { return std::max(f.size(), g.size()); }
};

/// For F = (alpha/n) Gamma(u) prod Gamma(u_i) / Gamma(u + sum u_i + 1):
///   f_s = prod_{j=0}^{n-1} (u_s + j),
///   g_s = prod_{j=1}^{n_s} (u - j) * prod_{j=1}^{n - n_s} (u + sum u_i + j),
/// with u expanded as a linear form in u_1, ..., u_p.
std::vector<FactorPair> shift_ratio_factors(const Shape& shape, double alpha);

/// Returns log F at u.
using LogFunction = std::function<cplx(std::span<const cplx>)>;

/// max over s of |F(u + n e_s) - (f_s/g_s)(u) F(u)| / |F(u + n e_s)|, evaluated
/// through log F. Throws PoleError when a factor of g_s vanishes.
double functional_equation_error(const Shape& shape, std::span<const FactorPair> pairs,
                                 const LogFunction& log_f, std::span<const cplx> u);

/// functional_equation_error with the Mellin-Barnes kernel.
double check_functional_equation(const Shape& shape, double alpha, std::span<const cplx> u);

/// Polynomial in commuting variables, keyed by exponent multi-index.
using Polynomial = std::map<std::vector<int>, double>;
Polynomial expand(std::span<const LinearFactor> factors, std::size_t dim);

/// Central finite-difference weights for the k-th derivative on offsets
/// -m..m (Fornberg), scaled for unit step.
std::vector<double> fd_weights(int derivative, int half_width);

/// Applies poly(theta), theta_i = -x_i d/dx_i = -d/dlog(x_i), to a function
/// of log x at the point log_x, with 4th-order central stencils of step h.
/// Returns the value and the sum of absolute monomial contributions.
struct OperatorValue {
  double value = 0.0;
  double magnitude = 0.0;
};
OperatorValue apply_euler_polynomial(const Polynomial& poly,
                                     const std::function<double(std::span<const double>)>& fn,
                                     std::span<const double> log_x, double h);

struct PdeResidual {
  double residual = 0.0;         ///< at step h
  double residual_coarse = 0.0;  ///< at step 2h
  double observed_order = 0.0;   ///< log2(coarse / fine)
  std::vector<double> per_equation;
};

/// Residual of f_s(theta) y = g_s(theta) (x_s^n y) for y = Z^alpha, each
/// equation normalized by the magnitude of its terms. Throws StepTooSmall
/// when halving the step makes the residual worse (roundoff domination).
PdeResidual pde_residual(const Problem& problem, double alpha, double h);

/// Taylor coefficients c_0..c_kmax of Z^alpha in x_1 (p = 1), from the
/// residues of the kernel at u_1 = -k.
std::vector<double> series_coefficients(const Shape& shape, double alpha, int k_max);

/// sum c_k x^k.
double series_sum(std::span<const double> coeffs, double x);

}  // namespace mellin::hyper
