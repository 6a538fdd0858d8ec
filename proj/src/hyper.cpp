#include "mellin/hyper.hpp"

#include <cmath>
#include <sstream>

#include "mellin/error.hpp"
#include "mellin/gamma.hpp"
#include "mellin/mellin.hpp"
#include "mellin/param.hpp"

namespace mellin::hyper {

cplx LinearFactor::operator()(std::span<const cplx> u) const {
  cplx acc = offset;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    acc += boost::rational_cast<double>(coeffs[i]) * u[i];
  }
  return acc;
}

std::string LinearFactor::describe() const {
  std::ostringstream out;
  out.precision(12);
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].numerator() == 0) continue;
    out << (first ? "" : " + ") << "(" << coeffs[i] << ")u" << i + 1;
    first = false;
  }
  if (offset != 0.0 || first) out << (first ? "" : " + ") << offset;
  return out.str();
}

cplx FactorPair::ratio(std::span<const cplx> u) const {
  cplx num = 1.0;
  cplx den = 1.0;
  for (const auto& factor : f) num *= factor(u);
  for (const auto& factor : g) den *= factor(u);
  return num / den;
}

std::vector<FactorPair> shift_ratio_factors(const Shape& shape, double alpha) {
  const std::size_t p = shape.dim();
  const int n = shape.degree();
  // u = alpha/n - sum (n_i/n) u_i;  u + sum u_i = alpha/n + sum ((n - n_i)/n) u_i.
  std::vector<Rational> u_coeffs(p), w_coeffs(p);
  for (std::size_t i = 0; i < p; ++i) {
    u_coeffs[i] = Rational(-shape.exponent(i), n);
    w_coeffs[i] = Rational(n - shape.exponent(i), n);
  }
  const double lead = alpha / n;

  std::vector<FactorPair> pairs;
  for (std::size_t s = 0; s < p; ++s) {
    FactorPair pair;
    pair.index = s;
    std::vector<Rational> unit(p, Rational(0));
    unit[s] = 1;
    for (int j = 0; j < n; ++j) pair.f.push_back({unit, double(j)});
    for (int j = 1; j <= shape.exponent(s); ++j) pair.g.push_back({u_coeffs, lead - j});
    for (int j = 1; j <= n - shape.exponent(s); ++j) pair.g.push_back({w_coeffs, lead + j});
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

double functional_equation_error(const Shape& shape, std::span<const FactorPair> pairs,
                                 const LogFunction& log_f, std::span<const cplx> u) {
  const cplx base = log_f(u);
  double worst = 0.0;
  for (const FactorPair& pair : pairs) {
    cplx log_ratio = 0.0;
    for (const auto& factor : pair.f) log_ratio += std::log(factor(u));
    for (const auto& factor : pair.g) {
      const cplx v = factor(u);
      if (std::abs(v) < kPoleTolerance) {
        throw PoleError("functional equation: factor " + factor.describe() + " vanishes");
      }
      log_ratio -= std::log(v);
    }
    std::vector<cplx> shifted(u.begin(), u.end());
    shifted[pair.index] += double(shape.degree());
    // |F(shifted) - ratio F(u)| / |F(shifted)| = |1 - exp(log ratio + log F(u) - log F(shifted))|.
    const cplx delta = log_ratio + base - log_f(shifted);
    worst = std::max(worst, std::abs(1.0 - std::exp(delta)));
  }
  return worst;
}

double check_functional_equation(const Shape& shape, double alpha, std::span<const cplx> u) {
  if (u.size() != shape.dim()) throw InvalidInput("u sample has the wrong dimension");
  const auto pairs = shift_ratio_factors(shape, alpha);
  return functional_equation_error(shape, pairs,
                                   [&](std::span<const cplx> v) { return mb::log_kernel(shape, alpha, v); },
                                   u);
}

Polynomial expand(std::span<const LinearFactor> factors, std::size_t dim) {
  Polynomial poly;
  poly[std::vector<int>(dim, 0)] = 1.0;
  for (const LinearFactor& factor : factors) {
    Polynomial next;
    for (const auto& [index, coeff] : poly) {
      if (factor.offset != 0.0) next[index] += coeff * factor.offset;
      for (std::size_t i = 0; i < dim; ++i) {
        const double c = boost::rational_cast<double>(factor.coeffs[i]);
        if (c == 0.0) continue;
        auto raised = index;
        ++raised[i];
        next[raised] += coeff * c;
      }
    }
    poly = std::move(next);
  }
  return poly;
}

std::vector<double> fd_weights(int derivative, int half_width) {
  const int count = 2 * half_width + 1;
  std::vector<double> x(count);
  for (int j = 0; j < count; ++j) x[j] = j - half_width;
  const int order = derivative;
  // Fornberg's recursion for weights at z = 0.
  std::vector<std::vector<double>> c(count, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i < count; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(count);
  for (int j = 0; j < count; ++j) w[j] = c[j][order];
  return w;
}

namespace {

// Half width giving 4th-order accuracy for a centered k-th derivative.
int stencil_half_width(int k) { return k == 0 ? 0 : (k + 1) / 2 + 1; }

}  // namespace

OperatorValue apply_euler_polynomial(const Polynomial& poly,
                                     const std::function<double(std::span<const double>)>& fn,
                                     std::span<const double> log_x, double h) {
  const std::size_t dim = log_x.size();
  std::map<std::vector<int>, double> cache;
  auto sample = [&](const std::vector<int>& offset) {
    auto it = cache.find(offset);
    if (it != cache.end()) return it->second;
    std::vector<double> point(log_x.begin(), log_x.end());
    for (std::size_t i = 0; i < dim; ++i) point[i] += offset[i] * h;
    const double v = fn(point);
    cache.emplace(offset, v);
    return v;
  };

  OperatorValue out;
  for (const auto& [index, coeff] : poly) {
    std::vector<std::vector<double>> weights(dim);
    std::vector<int> half(dim);
    int total_order = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      half[i] = stencil_half_width(index[i]);
      weights[i] = index[i] == 0 ? std::vector<double>{1.0} : fd_weights(index[i], half[i]);
      total_order += index[i];
    }
    // Tensor-product stencil.
    double derivative = 0.0;
    std::vector<int> pos(dim, 0);
    while (true) {
      double w = 1.0;
      std::vector<int> offset(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        w *= weights[i][pos[i]];
        offset[i] = pos[i] - half[i];
      }
      if (w != 0.0) derivative += w * sample(offset);
      std::size_t d = 0;
      while (d < dim && ++pos[d] == static_cast<int>(weights[d].size())) pos[d++] = 0;
      if (d == dim) break;
    }
    derivative /= std::pow(h, total_order);
    const double term = coeff * (total_order % 2 ? -derivative : derivative);
    out.value += term;
    out.magnitude += std::abs(term);
  }
  return out;
}

namespace {

std::vector<double> pde_residuals_at(const Problem& problem, double alpha, double h,
                                     const std::vector<FactorPair>& pairs) {
  const Shape& shape = problem.shape();
  const std::size_t p = shape.dim();
  std::vector<double> log_x(p);
  for (std::size_t i = 0; i < p; ++i) log_x[i] = std::log(problem.coeff(i));

  auto y = [&](std::span<const double> lx) {
    std::vector<double> x(p);
    for (std::size_t i = 0; i < p; ++i) x[i] = std::exp(lx[i]);
    return std::pow(param::principal_root_param(Problem(shape, std::move(x))), alpha);
  };

  std::vector<double> out;
  for (const FactorPair& pair : pairs) {
    const std::size_t s = pair.index;
    const double n = shape.degree();
    auto shifted = [&](std::span<const double> lx) { return std::exp(n * lx[s]) * y(lx); };
    const auto lhs = apply_euler_polynomial(expand(pair.f, p), y, log_x, h);
    const auto rhs = apply_euler_polynomial(expand(pair.g, p), shifted, log_x, h);
    out.push_back(std::abs(lhs.value - rhs.value) / (lhs.magnitude + rhs.magnitude));
  }
  return out;
}

}  // namespace

PdeResidual pde_residual(const Problem& problem, double alpha, double h) {
  if (!(alpha > 0.0)) throw InvalidInput("alpha must be positive");
  if (!(h > 0.0)) throw InvalidInput("finite-difference step must be positive");
  for (double x : problem.coeffs()) {
    if (!(x > 0.0)) throw InvalidInput("PDE residual needs strictly positive coefficients");
  }
  const auto pairs = shift_ratio_factors(problem.shape(), alpha);
  PdeResidual out;
  out.per_equation = pde_residuals_at(problem, alpha, h, pairs);
  const auto coarse = pde_residuals_at(problem, alpha, 2 * h, pairs);
  for (double r : out.per_equation) out.residual = std::max(out.residual, r);
  for (double r : coarse) out.residual_coarse = std::max(out.residual_coarse, r);
  out.observed_order = std::log2(out.residual_coarse / out.residual);
  if (out.residual > out.residual_coarse && out.residual > 1e-9) {
    std::ostringstream msg;
    msg << "step h = " << h << " is roundoff dominated (residual " << out.residual
        << " vs " << out.residual_coarse << " at 2h)";
    throw StepTooSmall(msg.str());
  }
  return out;
}

std::vector<double> series_coefficients(const Shape& shape, double alpha, int k_max) {
  if (shape.dim() != 1) throw InvalidInput("series coefficients are implemented for p = 1");
  if (!(alpha > 0.0)) throw InvalidInput("alpha must be positive");
  if (k_max < 0) throw InvalidInput("k_max must be nonnegative");
  const double n = shape.degree();
  std::vector<double> c(static_cast<std::size_t>(k_max) + 1);
  // Residue of Gamma(u_1) at -k is (-1)^k / k!; there u = alpha/n + (n_1/n) k, so
  // c_k = (-1)^k (alpha/n) Gamma(u) / (Gamma(u - k + 1) k!), a finite product.
  c[0] = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    const double u = (alpha + shape.exponent(0) * double(k)) / n;
    double v = alpha / n / k;
    for (int j = 1; j < k; ++j) v *= (u - j) / j;
    if (v != 0.0) c[k] = k % 2 ? -v : v;  // keep exact zeros unsigned
  }
  return c;
}

double series_sum(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

}  // namespace mellin::hyper
