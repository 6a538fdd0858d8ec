// Command-line front end: root, verify, contour-trace, series.
#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>

#include "mellin/commands.hpp"
#include "mellin/error.hpp"

using namespace mellin::cli;

namespace {

struct Output {
  bool as_json = false;
  bool timing = true;
  std::string out_path;
};

int emit(const std::vector<RunReport>& reports, const Output& output) {
  std::string text;
  if (output.as_json) {
    json doc;
    if (reports.size() == 1) {
      doc = reports.front().to_json(output.timing);
    } else {
      doc = json::array();
      for (const auto& r : reports) doc.push_back(r.to_json(output.timing));
    }
    text = doc.dump(2) + "\n";
  } else {
    for (const auto& r : reports) text += r.to_text();
  }

  int code = kOk;
  for (const auto& r : reports) code = std::max(code, r.exit_code);
  for (const auto& r : reports) {
    if (!r.error.empty()) std::cerr << "mellin " << r.command << ": " << r.error << "\n";
  }

  if (output.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output.out_path);
    if (!out || !(out << text)) {
      std::cerr << "mellin: cannot write " << output.out_path << "\n";
      return kNumericalFailure;
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal root of z^n + x_1 z^n_1 + ... + x_p z^n_p - 1 = 0 by Mellin's method"};
  app.require_subcommand(1);

  Output output;
  bool no_timing = false;
  app.add_flag("--json", output.as_json, "Emit the report as JSON");
  app.add_flag("--no-timing", no_timing, "Omit wall-clock timings from JSON reports");

  double env_tol = 1e-9;
  try {
    env_tol = default_tolerance();
  } catch (const mellin::InvalidInput& e) {
    std::cerr << "mellin: " << e.what() << "\n";
    return kBadInput;
  }

  // root
  RootArgs root;
  root.tol = env_tol;
  std::string spec_path;
  auto* root_cmd = app.add_subcommand("root", "Compute Z^alpha by one or more methods");
  root_cmd->add_option("--n", root.n, "Degree n");
  root_cmd->add_option("--exps", root.exps, "Exponents n_1 > ... > n_p, comma separated")->delimiter(',');
  root_cmd->add_option("--coeffs", root.coeffs, "Coefficients x_1, ..., x_p, comma separated")->delimiter(',');
  root_cmd->add_option("--method", root.method, "param | oracle | mb | all")->capture_default_str();
  root_cmd->add_option("--alpha", root.alpha, "Power of Z")->capture_default_str();
  root_cmd->add_option("--tol", root.tol, "Tolerance (default from MELLIN_TOL or 1e-9)");
  root_cmd->add_option("--spec", spec_path, "JSON file with one instance or an array of instances");
  root_cmd->add_option("--out", output.out_path, "Write the report here instead of stdout");

  // verify
  VerifyArgs verify;
  std::size_t count = 0, index = 0;
  double verify_tol = 0.0;
  auto* verify_cmd = app.add_subcommand("verify", "Run a seeded property suite");
  verify_cmd->add_option("--suite", verify.suite,
                         "mellin | jacobian | det | dirichlet | funceq | pde | epsilon | all")
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify.options.seed, "Random seed")->capture_default_str();
  auto* count_opt = verify_cmd->add_option("--count", count, "Instances per suite");
  auto* index_opt = verify_cmd->add_option("--index", index, "Run a single instance (replay)");
  auto* vtol_opt = verify_cmd->add_option("--tol", verify_tol, "Override the suite tolerance");
  verify_cmd->add_option("--out", output.out_path, "Write the report here instead of stdout");

  // contour-trace
  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("contour-trace", "Write integrand samples along the contour as CSV");
  trace_cmd->add_option("--n", trace.n, "Degree n");
  trace_cmd->add_option("--exps", trace.exps, "Exponents, comma separated")->delimiter(',');
  trace_cmd->add_option("--coeffs", trace.coeffs, "Coefficients, comma separated")->delimiter(',');
  trace_cmd->add_option("--alpha", trace.alpha, "Power of Z")->capture_default_str();
  trace_cmd->add_option("--height", trace.height, "Half length of each line")->capture_default_str();
  trace_cmd->add_option("--nodes", trace.nodes, "Samples per line")->capture_default_str();
  trace_cmd->add_option("--abscissas", trace.abscissas, "Re u_s per line, comma separated")->delimiter(',');
  trace_cmd->add_option("--out", trace.out_path, "CSV path (stdout if omitted)");

  // series
  SeriesArgs series;
  series.tol = std::max(env_tol, 1e-8);
  double series_x = 0.0;
  auto* series_cmd = app.add_subcommand("series", "Residue series coefficients for p = 1");
  series_cmd->add_option("--n", series.n, "Degree n");
  series_cmd->add_option("--exps", series.exps, "The single exponent n_1")->delimiter(',');
  series_cmd->add_option("--alpha", series.alpha, "Power of Z")->capture_default_str();
  series_cmd->add_option("--kmax", series.k_max, "Highest coefficient index")->capture_default_str();
  auto* x_opt = series_cmd->add_option("--x", series_x, "Also sum the series at x and compare");
  series_cmd->add_option("--tol", series.tol, "Tolerance for the comparison at --x");
  series_cmd->add_option("--out", output.out_path, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }
  output.timing = !no_timing;

  std::vector<RunReport> reports;
  if (root_cmd->parsed()) {
    if (!spec_path.empty()) {
      std::vector<RootArgs> specs;
      try {
        specs = load_root_specs(spec_path, root);
      } catch (const mellin::InvalidInput& e) {
        std::cerr << "mellin root: " << e.what() << "\n";
        return kBadInput;
      }
      for (const auto& s : specs) reports.push_back(run_guarded("root", [&] { return cmd_root(s); }));
    } else {
      reports.push_back(run_guarded("root", [&] { return cmd_root(root); }));
    }
  } else if (verify_cmd->parsed()) {
    if (count_opt->count() > 0) verify.options.count = count;
    if (index_opt->count() > 0) verify.options.index = index;
    if (vtol_opt->count() > 0) verify.options.tol = verify_tol;
    reports.push_back(run_guarded("verify", [&] { return cmd_verify(verify); }));
  } else if (trace_cmd->parsed()) {
    const bool to_stdout = trace.out_path.empty();
    RunReport r = run_guarded("contour-trace", [&] { return cmd_contour_trace(trace); });
    if (to_stdout && r.exit_code == kOk && !output.as_json) {
      std::cout << r.inputs["csv"].get<std::string>();
      return kOk;
    }
    reports.push_back(std::move(r));
  } else if (series_cmd->parsed()) {
    if (x_opt->count() > 0) series.x = series_x;
    reports.push_back(run_guarded("series", [&] { return cmd_series(series); }));
  }
  return emit(reports, output);
}
