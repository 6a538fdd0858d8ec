#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mellin::cli {

using json = nlohmann::ordered_json;

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kBadInput = 2, kNumericalFailure = 3 };

/// One numeric result. passed is set iff a tolerance is.
struct ResultEntry {
  std::string name;
  std::string method;
  double value = 0.0;
  double error_estimate = 0.0;
  std::optional<double> tolerance;
  std::optional<bool> passed;
  json detail = json::object();

  static ResultEntry measured(std::string name, std::string method, double value, double error_estimate);
  static ResultEntry checked(std::string name, std::string method, double value, double error_estimate,
                             double tolerance, bool passed);
};

struct RunReport {
  std::string command;
  json inputs = json::object();
  std::vector<ResultEntry> results;
  std::vector<json> failures;  ///< each carries a "replay" command
  std::vector<std::pair<std::string, double>> timing;
  std::string error;  ///< diagnostic when the command itself failed
  int exit_code = kOk;

  bool all_passed() const;
  json to_json(bool include_timing = true) const;
  std::string to_text() const;
};

}  // namespace mellin::cli
