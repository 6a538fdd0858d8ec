#include "mellin/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "mellin/error.hpp"
#include "mellin/hyper.hpp"
#include "mellin/identities.hpp"
#include "mellin/mellin.hpp"
#include "mellin/oracle.hpp"
#include "mellin/param.hpp"

namespace mellin::cli {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// p distinct exponents from 1..n-1, strictly decreasing.
std::vector<int> random_exponents(Rng& rng, int n, int p) {
  std::vector<int> pool(n - 1);
  for (int k = 0; k < n - 1; ++k) pool[k] = k + 1;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<int> exps(pool.begin(), pool.begin() + p);
  std::sort(exps.rbegin(), exps.rend());
  return exps;
}

json shape_json(const Shape& shape) {
  return {{"n", shape.degree()},
          {"exps", std::vector<int>(shape.exponents().begin(), shape.exponents().end())}};
}

struct Outcome {
  double metric;
  bool passed;
};

using InstanceFn = std::function<Outcome(Rng&, double tol, json& params)>;

Outcome mellin_instance(Rng& rng, double tol, json& params) {
  const int p = uniform_int(rng, 0, 2) == 2 ? 2 : 1;
  const int n = uniform_int(rng, p + 1, 6);
  const Shape shape(n, random_exponents(rng, n, p));
  std::vector<cplx> u(p);
  double alpha = n * uniform(rng, 0.2, 1.2);
  for (int i = 0; i < p; ++i) {
    u[i] = uniform(rng, 0.2, 1.2);
    alpha += shape.exponent(i) * u[i].real();
  }
  params = shape_json(shape);
  params["alpha"] = alpha;
  params["u"] = [&] {
    std::vector<double> v;
    for (auto z : u) v.push_back(z.real());
    return v;
  }();
  const auto check = mb::forward_mellin_check(shape, {alpha, u}, tol);
  params["lhs"] = check.lhs;
  params["rhs"] = check.rhs;
  return {check.rel_error, check.passed};
}

Outcome jacobian_instance(Rng& rng, double tol, json& params) {
  const int p = uniform_int(rng, 1, 4);
  const int n = uniform_int(rng, p + 1, 10);
  const Shape shape(n, random_exponents(rng, n, p));
  std::vector<double> xi(p);
  for (auto& v : xi) v = uniform(rng, 0.0, 10.0);
  const param::ParamPoint point(xi);
  const double closed = param::jacobian_det(point, shape);
  const double fd = param::jacobian_det_fd(point, shape);
  params = shape_json(shape);
  params["xi"] = xi;
  const double err = std::abs(closed - fd) / std::abs(closed);
  return {err, err <= tol};
}

Outcome det_instance(Rng& rng, double, json& params) {
  const int p = uniform_int(rng, 1, 8);
  std::vector<identities::ExactRational> y;
  std::vector<std::string> text;
  for (int i = 0; i < p; ++i) {
    const int num = uniform_int(rng, -20, 20);
    const int den = uniform_int(rng, 1, 12);
    y.emplace_back(num, den);
    text.push_back(std::to_string(num) + "/" + std::to_string(den));
  }
  params = {{"y", text}};
  const bool equal =
      identities::det_rank_one(y) == identities::det_cofactor(identities::rank_one_matrix(y));
  return {equal ? 0.0 : 1.0, equal};
}

Outcome dirichlet_instance(Rng& rng, double tol, json& params) {
  const int p = uniform_int(rng, 1, 3);
  std::vector<cplx> u(p);
  double total = 0.0;
  for (auto& v : u) {
    v = uniform(rng, 0.2, 1.2);
    total += v.real();
  }
  const double omega = total + uniform(rng, 0.3, 1.5);
  params = {{"u", [&] {
               std::vector<double> out;
               for (auto z : u) out.push_back(z.real());
               return out;
             }()},
            {"omega", omega}};
  const auto r = identities::dirichlet_integral(u, omega, tol);
  return {r.rel_error, r.passed};
}

Outcome funceq_instance(Rng& rng, double tol, json& params) {
  const int p = uniform_int(rng, 1, 3);
  const int n = uniform_int(rng, p + 1, 8);
  const Shape shape(n, random_exponents(rng, n, p));
  const double alpha = uniform(rng, 0.5, 5.0);
  const auto pairs = hyper::shift_ratio_factors(shape, alpha);
  std::vector<cplx> u(p);
  // Resample until every denominator factor is well away from zero.
  for (int attempt = 0;; ++attempt) {
    for (auto& v : u) v = cplx(uniform(rng, 0.1, 2.0), uniform(rng, -3.0, 3.0));
    bool clear = true;
    for (const auto& pair : pairs) {
      for (const auto& g : pair.g) clear = clear && std::abs(g(u)) > 1e-3;
    }
    if (clear || attempt > 100) break;
  }
  params = shape_json(shape);
  params["alpha"] = alpha;
  json us = json::array();
  for (auto z : u) us.push_back({z.real(), z.imag()});
  params["u"] = us;
  const double err = hyper::check_functional_equation(shape, alpha, u);
  return {err, err <= tol};
}

Outcome pde_instance(Rng& rng, double tol, json& params) {
  const int p = uniform_int(rng, 1, 2);
  const int n = uniform_int(rng, p + 1, 4);
  const Shape shape(n, random_exponents(rng, n, p));
  std::vector<double> x(p);
  for (auto& v : x) v = uniform(rng, 0.1, 1.5);
  const double alpha = uniform_int(rng, 1, 2);
  params = shape_json(shape);
  params["coeffs"] = x;
  params["alpha"] = alpha;
  const auto r = hyper::pde_residual(Problem(shape, x), alpha, 1e-2);
  params["observed_order"] = r.observed_order;
  return {r.residual, r.residual <= tol};
}

Outcome epsilon_instance(Rng& rng, double tol, json& params) {
  const int n = uniform_int(rng, 2, 8);
  const int p = uniform_int(rng, 1, std::min(3, n - 1));
  const Shape shape(n, random_exponents(rng, n, p));
  std::vector<double> x(p);
  const double budget = uniform(rng, 0.0, 0.45);
  double total = 0.0;
  for (auto& v : x) total += (v = uniform(rng, 0.0, 1.0));
  for (auto& v : x) v *= budget / std::max(total, 1e-300);
  const Problem problem(shape, x);
  params = shape_json(shape);
  params["coeffs"] = x;
  const auto family = oracle::epsilon_family(problem);
  const auto roots = oracle::all_roots(problem);
  const double d = oracle::multiset_distance(family, roots.roots);
  return {d, d <= tol};
}

struct SuiteDef {
  std::size_t count;
  double tol;
  InstanceFn fn;
};

const std::map<std::string, SuiteDef, std::less<>>& registry() {
  static const std::map<std::string, SuiteDef, std::less<>> suites = {
      {"mellin", {20, 1e-6, mellin_instance}},
      {"jacobian", {500, 1e-6, jacobian_instance}},
      {"det", {1000, 0.0, det_instance}},
      {"dirichlet", {30, 1e-6, dirichlet_instance}},
      {"funceq", {50, 1e-11, funceq_instance}},
      {"pde", {10, 1e-4, pde_instance}},
      {"epsilon", {100, 1e-9, epsilon_instance}},
  };
  return suites;
}

const SuiteDef& lookup(std::string_view name) {
  const auto& reg = registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw InvalidInput("unknown suite: " + std::string(name));
  return it->second;
}

}  // namespace

std::size_t SuiteResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(instances.begin(), instances.end(), [](const auto& i) { return !i.passed; }));
}

double SuiteResult::worst_metric() const {
  double worst = 0.0;
  for (const auto& i : instances) worst = std::max(worst, i.metric);
  return worst;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"mellin", "jacobian", "det", "dirichlet",
                                                 "funceq", "pde",      "epsilon"};
  return names;
}

std::size_t default_count(std::string_view suite) { return lookup(suite).count; }
double default_suite_tolerance(std::string_view suite) { return lookup(suite).tol; }

std::mt19937_64 instance_rng(std::uint64_t seed, std::string_view suite, std::size_t index) {
  std::uint32_t hash = 2166136261u;  // FNV-1a
  for (char c : suite) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 16777619u;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), hash,
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

std::string replay_command(const std::string& suite, const SuiteOptions& options, std::size_t index) {
  std::ostringstream out;
  out << "mellin verify --suite " << suite << " --seed " << options.seed << " --index " << index;
  if (options.tol) {
    out.precision(17);
    out << " --tol " << *options.tol;
  }
  return out.str();
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  const SuiteDef& def = lookup(name);
  SuiteResult result;
  result.name = name;
  result.tolerance = options.tol.value_or(def.tol);

  std::vector<std::size_t> indices;
  if (options.index) {
    indices.push_back(*options.index);
  } else {
    const std::size_t count = options.count.value_or(def.count);
    for (std::size_t i = 0; i < count; ++i) indices.push_back(i);
  }

  for (std::size_t index : indices) {
    Rng rng = instance_rng(options.seed, name, index);
    InstanceOutcome outcome;
    outcome.index = index;
    try {
      const Outcome o = def.fn(rng, result.tolerance, outcome.params);
      outcome.metric = o.metric;
      outcome.passed = o.passed;
    } catch (const std::exception& e) {
      outcome.passed = false;
      outcome.metric = std::numeric_limits<double>::infinity();
      outcome.error = e.what();
    }
    result.instances.push_back(std::move(outcome));
  }
  return result;
}

}  // namespace mellin::cli
