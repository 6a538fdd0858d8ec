#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mellin/report.hpp"

namespace mellin::cli {

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::optional<std::size_t> count;  ///< default: per-suite count
  std::optional<std::size_t> index;  ///< run only this instance (replay)
  std::optional<double> tol;         ///< default: per-suite tolerance
};

struct InstanceOutcome {
  std::size_t index = 0;
  bool passed = false;
  double metric = 0.0;
  json params = json::object();
  std::string error;
};

struct SuiteResult {
  std::string name;
  double tolerance = 0.0;
  std::vector<InstanceOutcome> instances;

  std::size_t failures() const;
  double worst_metric() const;
};

/// mellin, jacobian, det, dirichlet, funceq, pde, epsilon.
const std::vector<std::string>& suite_names();

std::size_t default_count(std::string_view suite);
double default_suite_tolerance(std::string_view suite);

/// Generator for one instance: depends only on (seed, suite, index).
std::mt19937_64 instance_rng(std::uint64_t seed, std::string_view suite, std::size_t index);

/// Runs one named suite; instances are reported in index order.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

/// Command line that reruns a single instance.
std::string replay_command(const std::string& suite, const SuiteOptions& options, std::size_t index);

}  // namespace mellin::cli
