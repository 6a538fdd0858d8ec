#include "mellin/report.hpp"

#include <iomanip>
#include <sstream>

namespace mellin::cli {

ResultEntry ResultEntry::measured(std::string name, std::string method, double value,
                                  double error_estimate) {
  ResultEntry e;
  e.name = std::move(name);
  e.method = std::move(method);
  e.value = value;
  e.error_estimate = error_estimate;
  return e;
}

ResultEntry ResultEntry::checked(std::string name, std::string method, double value,
                                 double error_estimate, double tolerance, bool passed) {
  ResultEntry e = measured(std::move(name), std::move(method), value, error_estimate);
  e.tolerance = tolerance;
  e.passed = passed;
  return e;
}

bool RunReport::all_passed() const {
  for (const auto& r : results) {
    if (r.passed.has_value() && !*r.passed) return false;
  }
  return failures.empty();
}

json RunReport::to_json(bool include_timing) const {
  json out;
  out["command"] = command;
  out["inputs"] = inputs;
  json results_json = json::array();
  for (const auto& r : results) {
    json e;
    e["name"] = r.name;
    e["method"] = r.method;
    e["value"] = r.value;
    e["error_estimate"] = r.error_estimate;
    if (r.tolerance) {
      e["tolerance"] = *r.tolerance;
      e["pass"] = r.passed.value_or(false);
    }
    if (!r.detail.empty()) e["detail"] = r.detail;
    results_json.push_back(std::move(e));
  }
  out["results"] = std::move(results_json);
  out["failures"] = failures;
  if (!error.empty()) out["error"] = error;
  out["exit_code"] = exit_code;
  if (include_timing) {
    json t = json::object();
    for (const auto& [step, seconds] : timing) t[step] = seconds;
    out["timing"] = std::move(t);
  }
  return out;
}

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << command << "\n";
  if (!error.empty()) out << "error: " << error << "\n";
  for (const auto& r : results) {
    out << "  " << std::left << std::setw(28) << r.name << std::setw(12) << r.method
        << std::setprecision(16) << r.value << "  (err " << std::setprecision(3) << r.error_estimate
        << ")";
    if (r.tolerance) {
      out << "  tol " << *r.tolerance << "  " << (r.passed.value_or(false) ? "PASS" : "FAIL");
    }
    out << "\n";
  }
  for (const auto& f : failures) {
    out << "  failure: " << f.dump() << "\n";
    if (f.contains("replay")) out << "    replay: " << f["replay"].get<std::string>() << "\n";
  }
  return out.str();
}

}  // namespace mellin::cli
