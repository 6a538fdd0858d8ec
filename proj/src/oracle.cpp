#include "mellin/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "mellin/error.hpp"

namespace mellin::oracle {
namespace {

constexpr int kMaxNewton = 200;

// Dense coefficients c[0..n] of the monic polynomial, c[k] multiplies Z^k.
template <class T>
std::vector<T> dense_coefficients(const Shape& shape, std::span<const T> coeffs) {
  std::vector<T> c(static_cast<std::size_t>(shape.degree()) + 1, T(0));
  c.back() = T(1);
  c.front() = T(-1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[shape.exponent(i)] += coeffs[i];
  return c;
}

// Horner: value and derivative.
std::pair<cplx, cplx> eval_poly(const std::vector<cplx>& c, cplx z) {
  cplx value = c.back();
  cplx deriv = 0.0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    deriv = deriv * z + value;
    value = value * z + c[k];
  }
  return {value, deriv};
}

cplx newton_polish(const std::vector<cplx>& c, cplx z) {
  for (int it = 0; it < 50; ++it) {
    auto [f, df] = eval_poly(c, z);
    if (df == 0.0) break;
    const cplx step = f / df;
    z -= step;
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z))) {
      break;
    }
  }
  return z;
}

}  // namespace

double principal_root(const Problem& problem) {
  const Shape& shape = problem.shape();
  const int n = shape.degree();
  const auto x = problem.coeffs();

  // Upper bracket: x_i Z^{n_i} <= 1 forces Z <= x_i^{-1/n_i}; f >= 0 there.
  double hi = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) hi = std::min(hi, std::exp(-std::log(x[i]) / shape.exponent(i)));
  }
  double lo = 0.0;
  double z = hi;

  auto f_and_df = [&](double v) {
    double f = std::pow(v, n) - 1.0;
    double df = n * std::pow(v, n - 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const int e = shape.exponent(i);
      f += x[i] * std::pow(v, e);
      df += e * x[i] * std::pow(v, e - 1);
    }
    return std::pair{f, df};
  };

  for (int it = 0; it < kMaxNewton; ++it) {
    auto [f, df] = f_and_df(z);
    if (f == 0.0) return z;
    if (f > 0.0) hi = z; else lo = z;
    double next = z - f / df;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - z);
    z = next;
    if (step <= 2 * std::numeric_limits<double>::epsilon() * z || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi) {
      return z;
    }
  }
  throw ConvergenceError("principal_root: Newton did not converge for " + problem.describe());
}

RootSet all_roots(const Problem& problem) {
  const Shape& shape = problem.shape();
  const int n = shape.degree();
  std::vector<cplx> cx(problem.coeffs().begin(), problem.coeffs().end());
  const auto c = dense_coefficients<cplx>(shape, cx);

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  for (int k = 0; k < n; ++k) companion(k, n - 1) = -c[k].real();

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("all_roots: companion eigenvalue solve failed");
  }

  RootSet out;
  out.roots.reserve(n);
  for (int k = 0; k < n; ++k) out.roots.push_back(newton_polish(c, solver.eigenvalues()(k)));

  const double z0 = principal_root(problem);
  auto dist = [z0](const cplx& r) { return std::abs(r - z0); };
  out.principal_index = static_cast<std::size_t>(
      std::min_element(out.roots.begin(), out.roots.end(),
                       [&](const cplx& a, const cplx& b) { return dist(a) < dist(b); }) -
      out.roots.begin());
  return out;
}

std::vector<cplx> epsilon_family(const Problem& problem) {
  const Shape& shape = problem.shape();
  const int n = shape.degree();
  const auto x = problem.coeffs();
  if (std::accumulate(x.begin(), x.end(), 0.0) >= 0.5) {
    throw InvalidInput("epsilon_family: requires sum of coefficients < 0.5");
  }

  std::vector<cplx> family;
  family.reserve(n);
  for (int k = 0; k < n; ++k) {
    const cplx eps = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
    std::vector<cplx> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::pow(eps, shape.exponent(i)) * x[i];

    // Root W(t) of W^n + t * sum y_i W^{n_i} - 1, W(0) = 1.
    auto eval = [&](cplx w, double t) {
      cplx f = std::pow(w, n) - 1.0;
      cplx df = double(n) * std::pow(w, n - 1);
      cplx g = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const int e = shape.exponent(i);
        g += y[i] * std::pow(w, e);
        df += t * double(e) * y[i] * std::pow(w, e - 1);
      }
      return std::tuple{f + t * g, df, g};
    };

    cplx w = 1.0;
    double t = 0.0;
    double dt = 1.0 / 16.0;
    while (t < 1.0) {
      const double t_next = std::min(1.0, t + dt);
      auto [f0, df0, g0] = eval(w, t);
      cplx guess = w - (t_next - t) * g0 / df0;
      bool ok = false;
      cplx cand = guess;
      for (int it = 0; it < 12; ++it) {
        auto [f, df, g] = eval(cand, t_next);
        (void)g;
        const cplx step = f / df;
        cand -= step;
        if (std::abs(step) <= 1e-15 * std::abs(cand)) {
          ok = true;
          break;
        }
      }
      if (ok && std::abs(cand - guess) < 0.1) {
        w = cand;
        t = t_next;
        dt = std::min(0.25, dt * 1.5);
      } else {
        dt *= 0.5;
        if (dt < 1e-9) {
          throw ContinuationError("epsilon_family: continuation stalled on branch " +
                                  std::to_string(k) + " for " + problem.describe());
        }
      }
    }
    family.push_back(eps * w);
  }

  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      if (std::abs(family[a] - family[b]) < 1e-8) {
        throw ContinuationError("epsilon_family: branches " + std::to_string(a) + " and " +
                                std::to_string(b) + " collide for " + problem.describe());
      }
    }
  }
  return family;
}

double multiset_distance(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const cplx& z : a) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(z - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

}  // namespace mellin::oracle
