#include "mellin/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mellin/error.hpp"
#include "mellin/gamma.hpp"
#include "mellin/oracle.hpp"

namespace mellin::mb {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

void check_dim(const Shape& shape, std::size_t count, const char* what) {
  if (count != shape.dim()) {
    throw InvalidInput(std::string(what) + ": expected " + std::to_string(shape.dim()) +
                       " values, got " + std::to_string(count));
  }
}

}  // namespace

cplx derived_u(const Shape& shape, double alpha, std::span<const cplx> u) {
  check_dim(shape, u.size(), "derived_u");
  cplx acc = alpha / shape.degree();
  for (std::size_t i = 0; i < u.size(); ++i) acc -= shape.ratio(i) * u[i];
  return acc;
}

cplx omega(const Shape& shape, double alpha, std::span<const cplx> u) {
  cplx acc = derived_u(shape, alpha, u) + 1.0;
  for (const cplx& ui : u) acc += ui;
  return acc;
}

void check_admissible(const Shape& shape, const MellinParams& params) {
  if (!(params.alpha > 0.0)) throw InvalidInput("alpha must be positive");
  check_dim(shape, params.u.size(), "MellinParams");
  for (const cplx& ui : params.u) {
    if (!(ui.real() > 0.0)) throw DivergentParameters("Re u_i must be positive");
  }
  if (!(derived_u(shape, params.alpha, params.u).real() > 0.0)) {
    throw DivergentParameters("Re u = alpha/n - sum (n_i/n) Re u_i must be positive");
  }
}

cplx log_kernel(const Shape& shape, double alpha, std::span<const cplx> u) {
  const cplx lead = derived_u(shape, alpha, u);
  cplx acc = std::log(alpha / shape.degree()) + log_gamma(lead);
  for (const cplx& ui : u) acc += log_gamma(ui);
  return acc - log_gamma(omega(shape, alpha, u));
}

cplx kernel(const Shape& shape, double alpha, std::span<const cplx> u) {
  return checked_exp(log_kernel(shape, alpha, u));
}

std::vector<double> default_abscissas(const Shape& shape, double alpha) {
  const double p = static_cast<double>(shape.dim());
  const double a = std::min(0.5, alpha / shape.exponent_sum() * 0.9 / p);
  return std::vector<double>(shape.dim(), a);
}

void check_contour(const Shape& shape, double alpha, const Contour& contour) {
  check_dim(shape, contour.abscissas.size(), "Contour");
  double slack = alpha;
  for (std::size_t s = 0; s < contour.abscissas.size(); ++s) {
    const double a = contour.abscissas[s];
    if (!(a > 0.0)) throw InvalidInput("contour abscissas must be positive");
    slack -= shape.exponent(s) * a;
  }
  if (!(slack > 0.0)) {
    throw InvalidInput("contour violates alpha - sum n_s a_s > 0");
  }
  if (contour.height < 0.0 || contour.nodes_per_line < 0) {
    throw InvalidInput("contour height and node count must be nonnegative");
  }
}

double decay_rate(const Shape& shape, std::size_t s, cplx x) {
  return 0.5 * kPi * shape.ratio(s) - std::abs(std::arg(x));
}

cplx mb_integrand(const Shape& shape, std::span<const cplx> coeffs, double alpha,
                  std::span<const double> abscissas, std::span<const double> t) {
  std::vector<cplx> u(t.size());
  cplx log_power = 0.0;
  for (std::size_t s = 0; s < t.size(); ++s) {
    u[s] = cplx(abscissas[s], t[s]);
    log_power -= u[s] * std::log(coeffs[s]);
  }
  return std::exp(log_kernel(shape, alpha, u) + log_power);
}

namespace {

// Trapezoid sum of the Mellin-Barnes integrand on the grid t_s = j_s h,
// |j_s| <= bound[s]. All nodes share h, so Im u and Im omega are integer
// multiples of h/n and the two coupled Gamma factors are tabulated once.
struct LatticeSum {
  cplx value;
  double abs_sum = 0.0;
  std::size_t evaluations = 0;
};

class MbIntegrator {
 public:
  MbIntegrator(const Shape& shape, std::span<const cplx> coeffs, double alpha,
               std::vector<double> abscissas)
      : shape_(shape), coeffs_(coeffs.begin(), coeffs.end()), alpha_(alpha),
        a_(std::move(abscissas)) {
    for (const cplx& x : coeffs_) log_x_.push_back(std::log(x));
    const double n = shape.degree();
    u_re_ = alpha / n;
    omega_re_ = alpha / n + 1.0;
    for (std::size_t s = 0; s < a_.size(); ++s) {
      u_re_ -= shape.ratio(s) * a_[s];
      omega_re_ += (1.0 - shape.ratio(s)) * a_[s];
    }
    log_scale_ = std::log(alpha / n);
  }

  std::size_t dim() const { return a_.size(); }

  cplx node(std::span<const double> t) const {
    return mb_integrand(shape_, coeffs_, alpha_, a_, t) / std::pow(2.0 * kPi, double(dim()));
  }

  LatticeSum sum(double h, std::span<const long> bound) const {
    const int n = shape_.degree();
    const std::size_t p = dim();
    long m_u = 0;
    long m_w = 0;
    for (std::size_t s = 0; s < p; ++s) {
      m_u += shape_.exponent(s) * bound[s];
      m_w += (n - shape_.exponent(s)) * bound[s];
    }
    // Im u = -(h/n) sum n_s j_s, Im omega = (h/n) sum (n - n_s) j_s.
    std::vector<cplx> lg_u(2 * m_u + 1), lg_w(2 * m_w + 1);
    for (long m = -m_u; m <= m_u; ++m) lg_u[m + m_u] = log_gamma(cplx(u_re_, -h * m / n));
    for (long m = -m_w; m <= m_w; ++m) lg_w[m + m_w] = log_gamma(cplx(omega_re_, h * m / n));

    std::vector<std::vector<cplx>> line(p);
    for (std::size_t s = 0; s < p; ++s) {
      line[s].resize(2 * bound[s] + 1);
      for (long j = -bound[s]; j <= bound[s]; ++j) {
        const cplx us(a_[s], h * j);
        line[s][j + bound[s]] = log_gamma(us) - us * log_x_[s];
      }
    }

    const double weight = std::pow(h / (2.0 * kPi), double(p));
    CompensatedSum<cplx> acc;
    double abs_acc = 0.0;
    LatticeSum out;
    if (p == 1) {
      const int n1 = shape_.exponent(0);
      for (long j = -bound[0]; j <= bound[0]; ++j) {
        const cplx v = std::exp(log_scale_ + lg_u[n1 * j + m_u] + line[0][j + bound[0]] -
                                lg_w[(n - n1) * j + m_w]);
        acc.add(v);
        abs_acc += std::abs(v);
      }
      out.evaluations = line[0].size();
    } else {
      const int n1 = shape_.exponent(0);
      const int n2 = shape_.exponent(1);
      for (long j1 = -bound[0]; j1 <= bound[0]; ++j1) {
        CompensatedSum<cplx> row;
        const cplx base = log_scale_ + line[0][j1 + bound[0]];
        for (long j2 = -bound[1]; j2 <= bound[1]; ++j2) {
          const cplx v = std::exp(base + line[1][j2 + bound[1]] +
                                  lg_u[n1 * j1 + n2 * j2 + m_u] -
                                  lg_w[(n - n1) * j1 + (n - n2) * j2 + m_w]);
          row.add(v);
          abs_acc += std::abs(v);
        }
        acc.add(row.value());
      }
      out.evaluations = line[0].size() * line[1].size();
    }
    out.value = weight * acc.value();
    out.abs_sum = weight * abs_acc;
    return out;
  }

  // Sum over s of (1/kappa_s) * integral of |integrand| along the two edges
  // t_s = +-T_s, the other coordinate sampled over its own truncated line.
  double tail_bound(std::span<const double> heights, std::span<const double> kappa) const {
    const std::size_t p = dim();
    double total = 0.0;
    for (std::size_t s = 0; s < p; ++s) {
      double edge = 0.0;
      for (double sign : {-1.0, 1.0}) {
        if (p == 1) {
          const double t[1] = {sign * heights[0]};
          edge += std::abs(node(t));
        } else {
          const std::size_t o = 1 - s;
          const double step = std::min(0.25, heights[o] / 64.0);
          const long count = static_cast<long>(std::ceil(heights[o] / step));
          for (long k = -count; k <= count; ++k) {
            double t[2];
            t[s] = sign * heights[s];
            t[o] = k * step;
            edge += std::abs(node(t)) * step;
          }
        }
      }
      total += edge / kappa[s];
    }
    return total;
  }

 private:
  Shape shape_;
  std::vector<cplx> coeffs_;
  std::vector<cplx> log_x_;
  double alpha_;
  std::vector<double> a_;
  double u_re_ = 0.0;
  double omega_re_ = 0.0;
  double log_scale_ = 0.0;
};

}  // namespace

QuadResult principal_root_mb(const Shape& shape, std::span<const cplx> coeffs, double alpha,
                             const Contour& contour, const MbOptions& options) {
  if (!(alpha > 0.0)) throw InvalidInput("alpha must be positive");
  if (shape.dim() > 2) throw InvalidInput("Mellin-Barnes evaluation supports p <= 2");
  check_dim(shape, coeffs.size(), "principal_root_mb coefficients");
  check_contour(shape, alpha, contour);
  if (!(options.tol > 0.0)) throw InvalidInput("tolerance must be positive");

  const std::size_t p = shape.dim();
  std::vector<double> kappa(p);
  for (std::size_t s = 0; s < p; ++s) {
    if (coeffs[s] == 0.0) throw InvalidInput("Mellin-Barnes evaluation needs nonzero coefficients");
    kappa[s] = decay_rate(shape, s, coeffs[s]);
    if (!(kappa[s] > 0.0)) {
      std::ostringstream msg;
      msg << "coefficient " << s + 1 << " lies outside the sector |arg x_s| < n_s pi / (2n)";
      throw InvalidInput(msg.str());
    }
  }

  MbIntegrator integrator(shape, coeffs, alpha, contour.abscissas);

  std::vector<double> heights(p);
  double tail = 0.0;
  if (contour.height > 0.0) {
    std::fill(heights.begin(), heights.end(), contour.height);
    tail = integrator.tail_bound(heights, kappa);
    if (tail > options.tol) {
      std::ostringstream msg;
      msg << "truncation at height " << contour.height << " leaves tail estimate " << tail
          << " above tolerance " << options.tol;
      throw TruncationError(msg.str());
    }
  } else {
    for (std::size_t s = 0; s < p; ++s) heights[s] = 6.0 / kappa[s];
    while ((tail = integrator.tail_bound(heights, kappa)) > 0.1 * options.tol) {
      for (double& t : heights) t *= 1.25;
      if (*std::max_element(heights.begin(), heights.end()) > options.max_height) {
        throw TruncationError("no truncation height below " + std::to_string(options.max_height) +
                              " meets the tolerance");
      }
    }
  }

  const double t_max = *std::max_element(heights.begin(), heights.end());
  double h = contour.nodes_per_line > 1 ? 2.0 * t_max / (contour.nodes_per_line - 1)
                                        : std::min(0.5, t_max / 8.0);

  QuadResult result;
  LatticeSum previous;
  bool have_previous = false;
  while (true) {
    std::vector<long> bound(p);
    double nodes = 1.0;
    for (std::size_t s = 0; s < p; ++s) {
      bound[s] = static_cast<long>(std::ceil(heights[s] / h));
      nodes *= 2.0 * bound[s] + 1.0;
    }
    if (result.evaluations + nodes > static_cast<double>(options.max_nodes)) {
      throw ConvergenceError("Mellin-Barnes trapezoid rule did not converge within the node budget");
    }
    const LatticeSum current = integrator.sum(h, bound);
    result.evaluations += current.evaluations;
    if (have_previous) {
      const double diff = std::abs(current.value - previous.value);
      if (diff <= options.tol * std::max(1.0, std::abs(current.value))) {
        result.value = current.value;
        result.err_estimate = diff + tail + 1e-15 * current.abs_sum;
        return result;
      }
    }
    previous = current;
    have_previous = true;
    h *= 0.5;
  }
}

QuadResult principal_root_mb(const Problem& problem, double alpha, const Contour& contour,
                             const MbOptions& options) {
  std::vector<cplx> coeffs(problem.coeffs().begin(), problem.coeffs().end());
  return principal_root_mb(problem.shape(), coeffs, alpha, contour, options);
}

ForwardCheck forward_mellin_check(const Shape& shape, const MellinParams& params, double tol) {
  check_admissible(shape, params);
  if (shape.dim() > 2) throw InvalidInput("forward Mellin check supports p <= 2");
  for (const cplx& ui : params.u) {
    if (ui.imag() != 0.0) throw InvalidInput("forward Mellin check needs real u_i");
  }
  const std::size_t p = shape.dim();
  const double n = shape.degree();
  const double alpha = params.alpha;
  std::vector<double> u(p);
  for (std::size_t i = 0; i < p; ++i) u[i] = params.u[i].real();
  const double lead = derived_u(shape, alpha, params.u).real();

  // Slowest algebraic decay in log(xi): xi_i^{u_i} at 0, W^{-u} at infinity.
  double slowest = lead;
  for (double ui : u) slowest = std::min(slowest, ui);
  constexpr double kLogRange = 650.0;
  if (slowest * kLogRange < 36.0) {
    throw ConvergenceError("forward Mellin check: decay exponent too small for double range");
  }

  std::vector<double> log_ratio(p);
  for (std::size_t k = 0; k < p; ++k) log_ratio[k] = std::log(shape.ratio(k));
  const double jac_power = shape.exponent_sum() / n - double(p) - 1.0;

  // In xi coordinates: Z(x(xi))^alpha prod x_i^{u_i - 1} |dx/dxi| dxi, with Z
  // from the Newton oracle at x = Psi(xi) and dxi_i = xi_i dL_i.
  std::vector<double> x(p), shifted(p);
  auto integrand = [&](std::span<const double> log_xi) -> cplx {
    const double log_w = quad::log1p_sum_exp(log_xi);
    double log_value = jac_power * log_w;
    for (std::size_t i = 0; i < p; ++i) {
      const double log_x = log_xi[i] + (shape.ratio(i) - 1.0) * log_w;
      x[i] = std::exp(log_x);
      log_value += (u[i] - 1.0) * log_x + log_xi[i];
      shifted[i] = log_xi[i] + log_ratio[i];
    }
    log_value += quad::log1p_sum_exp(shifted);
    const double z = oracle::principal_root(Problem(shape, x));
    return std::exp(log_value + alpha * std::log(z));
  };

  quad::OrthantOptions opts;
  opts.rel_tol = 0.1 * tol;
  opts.log_xi_max = std::min(kLogRange, 45.0 / slowest);
  const QuadResult lhs = quad::integrate_orthant(p, integrand, opts);

  ForwardCheck out;
  out.lhs = lhs.value.real();
  out.rhs = kernel(shape, alpha, params.u).real();
  out.quad_error = lhs.err_estimate;
  out.evaluations = lhs.evaluations;
  out.rel_error = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  out.passed = out.rel_error <= tol;
  return out;
}

double quadratic_closed_form(double x) { return -0.5 * x + std::sqrt(1.0 + 0.25 * x * x); }

QuadraticCheck quadratic_mb_check(double x, double tol) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput("quadratic check needs x > 0");
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  const double log_x = std::log(x);
  // z = 1/2 + i t; dz / (4 pi i) = dt / (4 pi).
  auto f = [log_x](double t) {
    const cplx z(0.5, t);
    return std::exp(log_gamma(z) + log_gamma(0.5 * (1.0 - z)) - log_gamma(0.5 * (3.0 + z)) -
                    z * log_x) /
           (4.0 * kPi);
  };
  constexpr double kappa = 0.5 * kPi;

  double height = 8.0;
  double tail = 0.0;
  while ((tail = (std::abs(f(height)) + std::abs(f(-height))) / kappa) > 0.1 * tol) {
    height *= 1.25;
    if (height > 4000.0) throw TruncationError("quadratic check: truncation height exceeded");
  }

  double h = 0.5;
  cplx previous = 0.0;
  for (int level = 0; level < 20; ++level, h *= 0.5) {
    const long bound = static_cast<long>(std::ceil(height / h));
    CompensatedSum<cplx> acc;
    for (long j = -bound; j <= bound; ++j) acc.add(f(j * h));
    const cplx current = h * acc.value();
    if (level > 0) {
      const double diff = std::abs(current - previous);
      if (diff <= 0.1 * tol) {
        QuadraticCheck out;
        out.mb_value = current.real();
        out.closed_form = quadratic_closed_form(x);
        out.difference = std::abs(out.mb_value - out.closed_form);
        out.err_estimate = diff + tail;
        out.passed = out.difference <= tol;
        return out;
      }
    }
    previous = current;
  }
  throw ConvergenceError("quadratic check: trapezoid refinement did not converge");
}

std::vector<TraceRow> contour_trace(const Problem& problem, double alpha,
                                    std::span<const double> abscissas, double height, int nodes) {
  const Shape& shape = problem.shape();
  if (shape.dim() > 2) throw InvalidInput("contour trace supports p <= 2");
  if (nodes < 2 || !(height > 0.0)) throw InvalidInput("contour trace needs nodes >= 2 and height > 0");
  Contour contour{std::vector<double>(abscissas.begin(), abscissas.end()), height, nodes};
  check_contour(shape, alpha, contour);
  std::vector<cplx> coeffs(problem.coeffs().begin(), problem.coeffs().end());
  for (const cplx& c : coeffs) {
    if (c == 0.0) throw InvalidInput("contour trace needs nonzero coefficients");
  }

  std::vector<double> grid(nodes);
  for (int k = 0; k < nodes; ++k) grid[k] = -height + 2.0 * height * k / (nodes - 1);
  // Exact symmetry of the grid about 0.
  for (int k = 0; k < nodes / 2; ++k) grid[nodes - 1 - k] = -grid[k];
  if (nodes % 2 == 1) grid[nodes / 2] = 0.0;

  std::vector<TraceRow> rows;
  if (shape.dim() == 1) {
    rows.reserve(nodes);
    for (double t : grid) {
      const double ts[1] = {t};
      rows.push_back({{t}, mb_integrand(shape, coeffs, alpha, contour.abscissas, ts)});
    }
  } else {
    rows.reserve(static_cast<std::size_t>(nodes) * nodes);
    for (double t1 : grid) {
      for (double t2 : grid) {
        const double ts[2] = {t1, t2};
        rows.push_back({{t1, t2}, mb_integrand(shape, coeffs, alpha, contour.abscissas, ts)});
      }
    }
  }
  return rows;
}

}  // namespace mellin::mb
