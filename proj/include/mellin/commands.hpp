#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mellin/report.hpp"
#include "mellin/suites.hpp"

namespace mellin::cli {

/// Name of the environment variable that overrides the default tolerance.
inline constexpr const char* kToleranceEnv = "MELLIN_TOL";

/// MELLIN_TOL if set and valid, else 1e-9. Throws InvalidInput on a
/// malformed value.
double default_tolerance();

struct RootArgs {
  int n = 2;
  std::vector<int> exps;
  std::vector<double> coeffs;
  std::string method = "param";  ///< param | oracle | mb | all
  double alpha = 1.0;
  double tol = 1e-9;
};

/// Z^alpha by the requested method(s); "all" adds pairwise discrepancy checks.
RunReport cmd_root(const RootArgs& args);

/// Reads root instances from a JSON object or array of objects with keys
/// n, exps, coeffs and optionally method, alpha, tol.
std::vector<RootArgs> load_root_specs(const std::string& path, const RootArgs& defaults);

struct VerifyArgs {
  std::string suite = "all";
  SuiteOptions options;
};

RunReport cmd_verify(const VerifyArgs& args);

struct TraceArgs {
  int n = 2;
  std::vector<int> exps;
  std::vector<double> coeffs;
  double alpha = 1.0;
  double height = 30.0;
  int nodes = 601;
  std::vector<double> abscissas;  ///< empty: default abscissas
  std::string out_path;           ///< empty: stdout
};

/// Writes the integrand trace as CSV and reports the row count.
RunReport cmd_contour_trace(const TraceArgs& args);

/// CSV text for a trace (header plus one row per node).
std::string trace_csv(const TraceArgs& args);

struct SeriesArgs {
  int n = 2;
  std::vector<int> exps;
  double alpha = 1.0;
  int k_max = 10;
  std::optional<double> x;  ///< also sum the series at x and compare to the oracle
  double tol = 1e-8;
};

RunReport cmd_series(const SeriesArgs& args);

/// Runs body, mapping library exceptions onto the report: InvalidInput -> 2,
/// any other library or numerical error -> 3.
RunReport run_guarded(const std::string& command, const std::function<RunReport()>& body);

}  // namespace mellin::cli
