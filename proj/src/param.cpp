#include "mellin/param.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numeric>

#include "mellin/error.hpp"

namespace mellin::param {

ParamPoint::ParamPoint(std::vector<double> xi) : xi_(std::move(xi)) {
  for (double v : xi_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInput("ParamPoint: components must be finite and nonnegative");
    }
  }
  s_ = std::accumulate(xi_.begin(), xi_.end(), 0.0);
  w_ = 1.0 + s_;
}

namespace {

void check_dims(const ParamPoint& point, const Shape& shape) {
  if (point.dim() != shape.dim()) throw InvalidInput("ParamPoint dimension does not match shape");
}

}  // namespace

std::vector<double> psi_forward(const ParamPoint& point, const Shape& shape) {
  check_dims(point, shape);
  std::vector<double> x(point.dim());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = point.xi()[i] * std::pow(point.weight(), shape.ratio(i) - 1.0);
  }
  return x;
}

double jacobian_det(const ParamPoint& point, const Shape& shape) {
  check_dims(point, shape);
  const double n = shape.degree();
  const double p = static_cast<double>(point.dim());
  double correction = 1.0;
  for (std::size_t k = 0; k < point.dim(); ++k) correction += shape.exponent(k) * point.xi()[k] / n;
  return std::pow(point.weight(), shape.exponent_sum() / n - p - 1.0) * correction;
}

double jacobian_det_fd(const ParamPoint& point, const Shape& shape, double rel_step) {
  check_dims(point, shape);
  const std::size_t p = point.dim();
  Eigen::MatrixXd jac(p, p);
  for (std::size_t j = 0; j < p; ++j) {
    const double xj = point.xi()[j];
    const double h = rel_step * std::max(1.0, xj);
    std::vector<double> plus(point.xi().begin(), point.xi().end());
    std::vector<double> minus = plus;
    plus[j] += h;
    // One-sided at the boundary of the orthant.
    double width = 2 * h;
    if (xj - h < 0.0) {
      minus[j] = xj;
      width = h;
    } else {
      minus[j] -= h;
    }
    const auto fp = psi_forward(ParamPoint(plus), shape);
    const auto fm = psi_forward(ParamPoint(minus), shape);
    for (std::size_t i = 0; i < p; ++i) jac(i, j) = (fp[i] - fm[i]) / width;
  }
  return jac.determinant();
}

ParamPoint psi_inverse(std::span<const double> coeffs, const Shape& shape) {
  if (coeffs.size() != shape.dim()) throw InvalidInput("psi_inverse: dimension mismatch");
  double total = 0.0;
  for (double x : coeffs) {
    if (!std::isfinite(x) || x < 0.0) throw InvalidInput("psi_inverse: coefficients must be >= 0");
    total += x;
  }
  if (total == 0.0) return ParamPoint(std::vector<double>(coeffs.size(), 0.0));

  // g(s) = s - sum x_i (1+s)^{beta_i}, beta_i = 1 - n_i/n in (0, 1).
  auto g = [&](double s) {
    double value = s;
    double slope = 1.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const double beta = 1.0 - shape.ratio(i);
      const double term = coeffs[i] * std::pow(1.0 + s, beta);
      value -= term;
      slope -= beta * term / (1.0 + s);
    }
    return std::pair{value, slope};
  };

  double lo = 0.0;
  const double n = shape.degree();
  double hi = std::max(1.0, std::pow(total, n / (n - shape.exponent(0))) + 2.0 * total);
  while (g(hi).first <= 0.0) {
    lo = hi;
    hi *= 2.0;
  }

  // g is convex, so Newton from the right endpoint stays in the bracket.
  double s = hi;
  bool converged = false;
  for (int it = 0; it < 200 && !converged; ++it) {
    auto [value, slope] = g(s);
    if (value == 0.0) break;
    if (value > 0.0) hi = s; else lo = s;
    double next = s - value / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    converged = std::abs(next - s) <= 2 * std::numeric_limits<double>::epsilon() * (1.0 + s) ||
                hi - lo <= 2 * std::numeric_limits<double>::epsilon() * (1.0 + hi);
    s = next;
  }
  if (std::abs(g(s).first) > 1e-14 * (1.0 + s)) {
    throw ConvergenceError("psi_inverse: level equation did not converge");
  }

  std::vector<double> xi(coeffs.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    xi[i] = coeffs[i] * std::pow(1.0 + s, 1.0 - shape.ratio(i));
  }
  return ParamPoint(std::move(xi));
}

double principal_root_param(const Problem& problem) {
  const ParamPoint point = psi_inverse(problem.coeffs(), problem.shape());
  return std::pow(point.weight(), -1.0 / problem.shape().degree());
}

std::complex<double> psi_forward_complex(std::complex<double> xi, int degree, int exponent) {
  const std::complex<double> w = 1.0 + xi;
  if (w.imag() == 0.0 && w.real() <= 0.0) {
    throw InvalidInput("psi_forward_complex: xi lies on the cut (-inf, -1]");
  }
  return xi * std::pow(w, double(exponent) / degree - 1.0);
}

std::complex<double> psi_inverse_quadratic(std::complex<double> z) {
  const std::complex<double> half = 0.5 * z;
  const std::complex<double> r = half + std::sqrt(1.0 + half * half);
  return -1.0 + r * r;
}

}  // namespace mellin::param
