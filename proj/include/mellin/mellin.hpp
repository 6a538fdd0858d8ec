#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mellin/problem.hpp"
#include "mellin/quadrature.hpp"

namespace mellin::mb {

/// The power alpha of Z and the Mellin variables u_1, ..., u_p. The remaining
/// variable u = alpha/n - sum (n_i/n) u_i is derived from the shape.
struct MellinParams {
  double alpha = 1.0;
  std::vector<cplx> u;
};

/// u = alpha/n - sum (n_i/n) u_i.
cplx derived_u(const Shape& shape, double alpha, std::span<const cplx> u);

/// omega = u + u_1 + ... + u_p + 1.
cplx omega(const Shape& shape, double alpha, std::span<const cplx> u);

/// Throws DivergentParameters unless Re u_i > 0 and Re u > 0.
void check_admissible(const Shape& shape, const MellinParams& params);

/// log of (alpha/n) Gamma(u) prod Gamma(u_i) / Gamma(omega).
cplx log_kernel(const Shape& shape, double alpha, std::span<const cplx> u);
cplx kernel(const Shape& shape, double alpha, std::span<const cplx> u);

/// Vertical lines Re u_s = a_s truncated at |Im u_s| <= height. height = 0
/// selects the height from the kernel's decay; nodes_per_line = 0 starts the
/// refinement from step 0.5.
struct Contour {
  std::vector<double> abscissas;
  double height = 0.0;
  int nodes_per_line = 0;
};

/// a_s = min(0.5, 0.9 alpha / (p sum n_k)).
std::vector<double> default_abscissas(const Shape& shape, double alpha);

/// Throws InvalidInput unless a_s > 0 and alpha - sum n_s a_s > 0.
void check_contour(const Shape& shape, double alpha, const Contour& contour);

struct MbOptions {
  double tol = 1e-9;
  double max_height = 4000.0;
  std::size_t max_nodes = 50'000'000;
};

/// Guaranteed exponential decay rate of the integrand along line s:
/// (pi/2)(n_s/n) - |arg x_s|.
double decay_rate(const Shape& shape, std::size_t s, cplx x);

/// Z(x)^alpha from the p-fold Mellin-Barnes integral (p <= 2), trapezoid rule
/// on the truncated lines. err_estimate = step-halving difference + tail
/// bound + summation roundoff.
QuadResult principal_root_mb(const Shape& shape, std::span<const cplx> coeffs, double alpha,
                             const Contour& contour, const MbOptions& options = {});
QuadResult principal_root_mb(const Problem& problem, double alpha, const Contour& contour,
                             const MbOptions& options = {});

/// Integrand kernel(u) * prod x_s^{-u_s} at u_s = a_s + i t_s.
cplx mb_integrand(const Shape& shape, std::span<const cplx> coeffs, double alpha,
                  std::span<const double> abscissas, std::span<const double> t);

struct ForwardCheck {
  double lhs = 0.0;       ///< quadrature of Z^alpha x^{u-1} over the orthant
  double rhs = 0.0;       ///< gamma form
  double rel_error = 0.0;
  double quad_error = 0.0;
  std::size_t evaluations = 0;
  bool passed = false;
};

/// Mellin transform of Z^alpha by quadrature (p <= 2, real u) against its
/// gamma-ratio closed form; passed iff |lhs - rhs| <= tol |rhs|.
ForwardCheck forward_mellin_check(const Shape& shape, const MellinParams& params, double tol);

struct QuadraticCheck {
  double mb_value = 0.0;
  double closed_form = 0.0;
  double difference = 0.0;
  double err_estimate = 0.0;
  bool passed = false;
};

/// -x/2 + sqrt(1 + (x/2)^2), the principal root of Z^2 + x Z - 1.
double quadratic_closed_form(double x);

/// (1/4 pi i) int_{Re z = 1/2} Gamma(z) Gamma((1-z)/2) / Gamma((3+z)/2) x^{-z} dz
/// against quadratic_closed_form(x).
QuadraticCheck quadratic_mb_check(double x, double tol);

struct TraceRow {
  std::vector<double> t;  ///< Im u_s per line
  cplx value;             ///< mb_integrand at the node
};

/// Integrand samples on a uniform grid of `nodes` points per line over
/// [-height, height] (tensor grid for p = 2).
std::vector<TraceRow> contour_trace(const Problem& problem, double alpha,
                                    std::span<const double> abscissas, double height, int nodes);

}  // namespace mellin::mb
