#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mellin/problem.hpp"

namespace mellin::param {

/// A point xi of the closed positive orthant, with s = sum(xi) and W = 1 + s.
class ParamPoint {
 public:
  /// Throws InvalidInput on negative or non-finite components.
  explicit ParamPoint(std::vector<double> xi);

  std::span<const double> xi() const noexcept { return xi_; }
  double level() const noexcept { return s_; }
  double weight() const noexcept { return w_; }
  std::size_t dim() const noexcept { return xi_.size(); }

 private:
  std::vector<double> xi_;
  double s_;
  double w_;
};

/// x_i = xi_i * W^{n_i/n - 1}.
std::vector<double> psi_forward(const ParamPoint& point, const Shape& shape);

/// Closed form of det(dx/dxi) = W^{(n_1+...+n_p)/n - p - 1} (1 + (1/n) sum n_k xi_k).
double jacobian_det(const ParamPoint& point, const Shape& shape);

/// Central-difference determinant of psi_forward, for checking jacobian_det.
double jacobian_det_fd(const ParamPoint& point, const Shape& shape, double rel_step = 1e-5);

/// The unique xi >= 0 with psi_forward(xi) = coeffs. Solves the scalar level
/// equation s = sum x_i (1+s)^{1 - n_i/n}, then xi_i = x_i (1+s)^{1 - n_i/n}.
ParamPoint psi_inverse(std::span<const double> coeffs, const Shape& shape);

/// Z = W^{-1/n} at psi_inverse(coeffs).
double principal_root_param(const Problem& problem);

/// Psi on C \ (-inf, -1] for p = 1, principal branch of the power.
std::complex<double> psi_forward_complex(std::complex<double> xi, int degree, int exponent);

/// Closed-form inverse for n = 2, p = 1: -1 + (z/2 + sqrt(1 + (z/2)^2))^2.
std::complex<double> psi_inverse_quadratic(std::complex<double> z);

}  // namespace mellin::param
