#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <span>
#include <vector>

#include "mellin/problem.hpp"
#include "mellin/quadrature.hpp"

namespace mellin::identities {

using ExactRational = boost::multiprecision::cpp_rational;
using ExactMatrix = std::vector<std::vector<ExactRational>>;

/// M[i][j] = delta_ij + y_i.
ExactMatrix rank_one_matrix(std::span<const ExactRational> y);

/// det M(y) by the closed form 1 + y_1 + ... + y_p.
ExactRational det_rank_one(std::span<const ExactRational> y);

/// Exact cofactor (Laplace) expansion along the first row, memoized over
/// column subsets; p <= 20.
ExactRational det_cofactor(const ExactMatrix& m);

struct DirichletResult {
  cplx numeric;
  cplx gamma_form;
  double rel_error = 0.0;
  double quad_error = 0.0;
  std::size_t evaluations = 0;
  bool passed = false;
};

/// prod Gamma(u_i) Gamma(omega - sum u_i) / Gamma(omega).
cplx dirichlet_gamma_form(std::span<const cplx> u, double omega);

/// int_{[0,inf)^p} prod xi_i^{u_i - 1} / (1 + sum xi_i)^omega dxi for p <= 3,
/// against its gamma form. Throws DivergentParameters unless Re u_i > 0 and
/// Re(omega - sum u_i) > 0.
DirichletResult dirichlet_integral(std::span<const cplx> u, double omega, double tol);

/// Terms of the xi-coordinate form of the Mellin transform of Z^alpha:
/// I = I_0 + I_1 + ... + I_p.
struct Decomposition {
  double i0_gamma = 0.0;
  std::vector<double> ii_gamma;   ///< I_i from their gamma formulas
  double i0_numeric = 0.0;        ///< Dirichlet quadrature with omega = u + sum u_i + 1
  std::vector<double> ii_numeric; ///< (n_i/n) * Dirichlet quadrature with u_i + 1
  double total_gamma = 0.0;       ///< I_0 + sum I_i
  double closed_form = 0.0;       ///< (alpha/n) Gamma(u) prod Gamma(u_i) / Gamma(omega)
  double forward_lhs = 0.0;       ///< forward Mellin quadrature (p <= 2), else 0
  double max_rel_error = 0.0;
  bool passed = false;
};

/// Checks I_i = (n_i u_i / (n u)) I_0, I = (alpha / (n u)) I_0 = closed form,
/// each term against quadrature, and (p <= 2) against forward_mellin_check's lhs.
Decomposition i0_ii_decomposition_check(std::span<const double> u, double alpha,
                                        const Shape& shape, double tol);

}  // namespace mellin::identities
