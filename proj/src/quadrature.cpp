#include "mellin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mellin/error.hpp"

namespace mellin::quad {

std::vector<HalfLineNode> half_line_nodes(double h, double log_xi_max) {
  const double tau_max = std::asinh(log_xi_max / std::numbers::pi);
  const auto k_max = static_cast<long>(std::floor(tau_max / h));
  std::vector<HalfLineNode> nodes;
  nodes.reserve(static_cast<std::size_t>(2 * k_max + 1));
  for (long k = -k_max; k <= k_max; ++k) {
    const double tau = static_cast<double>(k) * h;
    nodes.push_back({std::numbers::pi * std::sinh(tau), std::numbers::pi * std::cosh(tau)});
  }
  return nodes;
}

double log1p_sum_exp(std::span<const double> terms) {
  double m = 0.0;
  for (double t : terms) m = std::max(m, t);
  double acc = std::exp(-m);
  for (double t : terms) acc += std::exp(t - m);
  return m + std::log(acc);
}

namespace {

cplx tensor_sum(std::size_t dim, const std::vector<HalfLineNode>& nodes, double h,
                const LogCoordIntegrand& f, std::size_t& evaluations) {
  const std::size_t m = nodes.size();
  std::vector<std::size_t> index(dim, 0);
  std::vector<double> log_xi(dim);
  CompensatedSum<cplx> sum;
  while (true) {
    double weight = 1.0;
    for (std::size_t d = 0; d < dim; ++d) {
      log_xi[d] = nodes[index[d]].log_xi;
      weight *= nodes[index[d]].weight * h;
    }
    sum.add(weight * f(log_xi));
    ++evaluations;

    std::size_t d = 0;
    while (d < dim && ++index[d] == m) index[d++] = 0;
    if (d == dim) break;
  }
  return sum.value();
}

}  // namespace

QuadResult integrate_orthant(std::size_t dim, const LogCoordIntegrand& f,
                             const OrthantOptions& options) {
  if (dim == 0) throw InvalidInput("integrate_orthant: dimension must be >= 1");
  QuadResult result;
  cplx previous = 0.0;
  double h = options.initial_step;
  for (int level = 0; level < options.max_levels; ++level, h *= 0.5) {
    const auto nodes = half_line_nodes(h, options.log_xi_max);
    const double count = std::pow(static_cast<double>(nodes.size()), static_cast<double>(dim));
    if (result.evaluations + count > static_cast<double>(options.max_evaluations)) break;
    const cplx current = tensor_sum(dim, nodes, h, f, result.evaluations);
    if (level > 0) {
      const double diff = std::abs(current - previous);
      if (h <= options.max_accept_step && diff <= options.rel_tol * std::abs(current)) {
        result.value = current;
        result.err_estimate = diff;
        return result;
      }
    }
    previous = current;
  }
  throw ConvergenceError("tanh-sinh quadrature did not reach relative tolerance " +
                         std::to_string(options.rel_tol));
}

}  // namespace mellin::quad
