#include "mellin/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <algorithm>
#include <limits>
#include <fstream>
#include <sstream>

#include "mellin/error.hpp"
#include "mellin/hyper.hpp"
#include "mellin/mellin.hpp"
#include "mellin/oracle.hpp"
#include "mellin/param.hpp"

namespace mellin::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json problem_inputs(int n, const std::vector<int>& exps, const std::vector<double>& coeffs) {
  return {{"n", n}, {"exps", exps}, {"coeffs", coeffs}};
}

bool mb_applicable(const Problem& problem) {
  if (problem.dim() > 2) return false;
  for (double x : problem.coeffs()) {
    if (x == 0.0) return false;
  }
  return true;
}

}  // namespace

double default_tolerance() {
  const char* env = std::getenv(kToleranceEnv);
  if (env == nullptr || *env == '\0') return 1e-9;
  char* end = nullptr;
  const double tol = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(tol > 0.0) || !std::isfinite(tol)) {
    throw InvalidInput(std::string(kToleranceEnv) + " must be a positive number, got '" + env + "'");
  }
  return tol;
}

RunReport cmd_root(const RootArgs& args) {
  RunReport report;
  report.command = "root";
  report.inputs = problem_inputs(args.n, args.exps, args.coeffs);
  report.inputs["method"] = args.method;
  report.inputs["alpha"] = args.alpha;
  report.inputs["tol"] = args.tol;

  if (args.method != "param" && args.method != "oracle" && args.method != "mb" &&
      args.method != "all") {
    throw InvalidInput("unknown method: " + args.method);
  }
  if (!(args.tol > 0.0)) throw InvalidInput("tolerance must be positive");
  if (!(args.alpha > 0.0) || !std::isfinite(args.alpha)) throw InvalidInput("alpha must be positive");
  const Problem problem(args.n, args.exps, args.coeffs);
  const bool all = args.method == "all";

  struct Value {
    std::string method;
    double value;
    double err;
  };
  std::vector<Value> values;

  if (all || args.method == "param") {
    const auto start = Clock::now();
    const double z = param::principal_root_param(problem);
    const double v = std::pow(z, args.alpha);
    values.push_back({"param", v, 4.0 * std::numeric_limits<double>::epsilon() * v});
    report.timing.emplace_back("param", seconds_since(start));
  }
  if (all || args.method == "oracle") {
    const auto start = Clock::now();
    const double z = oracle::principal_root(problem);
    const double v = std::pow(z, args.alpha);
    values.push_back({"oracle", v, 4.0 * std::numeric_limits<double>::epsilon() * v});
    report.timing.emplace_back("oracle", seconds_since(start));
  }
  if (args.method == "mb" || (all && mb_applicable(problem))) {
    const auto start = Clock::now();
    mb::Contour contour{mb::default_abscissas(problem.shape(), args.alpha), 0.0, 0};
    mb::MbOptions options;
    options.tol = 0.1 * args.tol;
    const QuadResult r = mb::principal_root_mb(problem, args.alpha, contour, options);
    values.push_back({"mb", r.value.real(), r.err_estimate});
    report.timing.emplace_back("mb", seconds_since(start));
  }

  for (const auto& v : values) {
    report.results.push_back(ResultEntry::measured("Z^alpha", v.method, v.value, v.err));
  }
  if (all) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        const double diff = std::abs(values[i].value - values[j].value);
        const double bound = std::max(args.tol * std::max(1.0, std::abs(values[i].value)),
                                      values[i].err + values[j].err);
        ResultEntry e = ResultEntry::checked(values[i].method + " vs " + values[j].method,
                                             "discrepancy", diff, values[i].err + values[j].err,
                                             bound, diff <= bound);
        report.results.push_back(std::move(e));
      }
    }
    if (!mb_applicable(problem)) {
      report.inputs["skipped"] = json::array({"mb"});
    }
  }
  report.exit_code = report.all_passed() ? kOk : kVerificationFailure;
  return report;
}

std::vector<RootArgs> load_root_specs(const std::string& path, const RootArgs& defaults) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open --spec file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("malformed --spec file " + path + ": " + e.what());
  }
  if (doc.is_object()) doc = json::array({doc});
  if (!doc.is_array()) throw InvalidInput("--spec file must hold an object or an array: " + path);

  std::vector<RootArgs> out;
  try {
    for (const auto& item : doc) {
      RootArgs a = defaults;
      a.n = item.at("n").get<int>();
      a.exps = item.at("exps").get<std::vector<int>>();
      a.coeffs = item.at("coeffs").get<std::vector<double>>();
      a.method = item.value("method", defaults.method);
      a.alpha = item.value("alpha", defaults.alpha);
      a.tol = item.value("tol", defaults.tol);
      out.push_back(std::move(a));
    }
  } catch (const json::exception& e) {
    throw InvalidInput("bad entry in --spec file " + path + ": " + e.what());
  }
  return out;
}

RunReport cmd_verify(const VerifyArgs& args) {
  RunReport report;
  report.command = "verify";
  report.inputs = {{"suite", args.suite}, {"seed", args.options.seed}};
  if (args.options.count) report.inputs["count"] = *args.options.count;
  if (args.options.index) report.inputs["index"] = *args.options.index;
  if (args.options.tol) report.inputs["tol"] = *args.options.tol;

  std::vector<std::string> names;
  if (args.suite == "all") {
    names = suite_names();
  } else {
    default_count(args.suite);  // validates the name
    names.push_back(args.suite);
  }

  for (const auto& name : names) {
    const auto start = Clock::now();
    const SuiteResult r = run_suite(name, args.options);
    report.timing.emplace_back(name, seconds_since(start));
    const std::size_t failed = r.failures();
    ResultEntry e = ResultEntry::checked(name, "suite", r.worst_metric(), 0.0, r.tolerance, failed == 0);
    e.detail = {{"instances", r.instances.size()}, {"failures", failed}};
    report.results.push_back(std::move(e));
    for (const auto& inst : r.instances) {
      if (inst.passed) continue;
      json f = {{"suite", name}, {"index", inst.index}, {"metric", inst.metric}, {"params", inst.params}};
      if (!inst.error.empty()) f["error"] = inst.error;
      f["replay"] = replay_command(name, args.options, inst.index);
      report.failures.push_back(std::move(f));
    }
  }
  report.exit_code = report.all_passed() ? kOk : kVerificationFailure;
  return report;
}

std::string trace_csv(const TraceArgs& args) {
  const Problem problem(args.n, args.exps, args.coeffs);
  if (problem.dim() > 2) throw InvalidInput("contour-trace supports p <= 2");
  if (args.nodes < 2) throw InvalidInput("nodes must be at least 2");
  if (!(args.height > 0.0)) throw InvalidInput("height must be positive");
  const auto abscissas =
      args.abscissas.empty() ? mb::default_abscissas(problem.shape(), args.alpha) : args.abscissas;
  mb::check_contour(problem.shape(), args.alpha, {abscissas, args.height, args.nodes});
  const auto rows = mb::contour_trace(problem, args.alpha, abscissas, args.height, args.nodes);

  std::ostringstream out;
  out.precision(17);
  out << (problem.dim() == 1 ? "im_u1,re,im,abs\n" : "im_u1,im_u2,re,im,abs\n");
  for (const auto& row : rows) {
    for (double t : row.t) out << t << ',';
    out << row.value.real() << ',' << row.value.imag() << ',' << std::abs(row.value) << '\n';
  }
  return out.str();
}

RunReport cmd_contour_trace(const TraceArgs& args) {
  RunReport report;
  report.command = "contour-trace";
  report.inputs = problem_inputs(args.n, args.exps, args.coeffs);
  report.inputs["alpha"] = args.alpha;
  report.inputs["height"] = args.height;
  report.inputs["nodes"] = args.nodes;
  report.inputs["out"] = args.out_path;

  const auto start = Clock::now();
  const std::string csv = trace_csv(args);
  report.timing.emplace_back("trace", seconds_since(start));
  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path);
    if (!out) throw Error("cannot write trace file: " + args.out_path);
    out << csv;
    if (!out) throw Error("failed writing trace file: " + args.out_path);
  }
  const auto rows = static_cast<double>(std::count(csv.begin(), csv.end(), '\n') - 1);
  report.results.push_back(ResultEntry::measured("rows", "trace", rows, 0.0));
  if (args.out_path.empty()) report.inputs["csv"] = csv;
  return report;
}

RunReport cmd_series(const SeriesArgs& args) {
  RunReport report;
  report.command = "series";
  report.inputs = {{"n", args.n}, {"exps", args.exps}, {"alpha", args.alpha}, {"kmax", args.k_max}};
  if (args.exps.size() != 1) throw InvalidInput("series requires exactly one exponent (p = 1)");
  if (args.k_max < 0) throw InvalidInput("kmax must be nonnegative");
  const Shape shape(args.n, args.exps);

  const auto coeffs = hyper::series_coefficients(shape, args.alpha, args.k_max);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    report.results.push_back(ResultEntry::measured("c" + std::to_string(k), "residue", coeffs[k], 0.0));
  }
  if (args.x) {
    report.inputs["x"] = *args.x;
    report.inputs["tol"] = args.tol;
    const double sum = hyper::series_sum(coeffs, *args.x);
    const double exact = std::pow(oracle::principal_root(Problem(shape, {*args.x})), args.alpha);
    const double diff = std::abs(sum - exact);
    report.results.push_back(ResultEntry::measured("partial_sum", "series", sum, diff));
    report.results.push_back(
        ResultEntry::checked("series vs oracle", "discrepancy", diff, 0.0, args.tol, diff <= args.tol));
  }
  report.exit_code = report.all_passed() ? kOk : kVerificationFailure;
  return report;
}

RunReport run_guarded(const std::string& command, const std::function<RunReport()>& body) {
  RunReport failed;
  failed.command = command;
  try {
    return body();
  } catch (const InvalidInput& e) {
    failed.error = e.what();
    failed.exit_code = kBadInput;
  } catch (const Error& e) {
    failed.error = e.what();
    failed.exit_code = kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    failed.error = e.what();
    failed.exit_code = kBadInput;
  }
  return failed;
}

}  // namespace mellin::cli
