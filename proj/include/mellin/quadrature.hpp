#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mellin {

using cplx = std::complex<double>;

/// Complex value with an a posteriori error estimate.
struct QuadResult {
  cplx value;
  double err_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Neumaier-compensated running sum; summation order is the call order.
template <class T>
class CompensatedSum {
 public:
  void add(T v) {
    const T t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

template <>
class CompensatedSum<cplx> {
 public:
  void add(cplx v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

namespace quad {

/// Node of the half-line tanh-sinh rule: tanh-sinh on (0, 1) pulled back by
/// xi = t / (1 - t), which gives xi = exp(pi sinh tau) exactly. log_xi is
/// exact; weight is d(log xi)/d(tau) = pi cosh(tau) (times h by the caller).
struct HalfLineNode {
  double log_xi;
  double weight;
};

/// Nodes tau = k h with |pi sinh tau| <= log_xi_max.
std::vector<HalfLineNode> half_line_nodes(double h, double log_xi_max);

struct OrthantOptions {
  double rel_tol = 1e-8;
  /// Truncation of each log(xi_i) to [-log_xi_max, log_xi_max].
  double log_xi_max = 200.0;
  double initial_step = 0.5;
  double max_accept_step = 0.125;
  int max_levels = 8;
  std::size_t max_evaluations = 40'000'000;
};

/// Integrand over [0, inf)^p written in log coordinates L_i = log xi_i:
/// returns f(xi) * prod(xi_i), so that the integral is over dL.
using LogCoordIntegrand = std::function<cplx(std::span<const double> log_xi)>;

/// Tensor-product half-line tanh-sinh over the orthant, halving the step until
/// two levels agree to rel_tol. Throws ConvergenceError otherwise.
QuadResult integrate_orthant(std::size_t dim, const LogCoordIntegrand& f,
                             const OrthantOptions& options = {});

/// log(1 + sum exp(terms)) without overflow.
double log1p_sum_exp(std::span<const double> terms);

}  // namespace quad
}  // namespace mellin
