#pragma once

// Verification suites run by the command-line tool and the acceptance binary.

#include <cstdint>
#include <string>
#include <vector>

#include "fraclap/report.hpp"

namespace fraclap {

struct SuiteOptions {
  int n = 2;
  double alpha = 1.0;
  /// Spectral grid points per axis (n = 3 runs use at most 128).
  int grid = 256;
  double box = 12.0;
  /// PV quadrature tolerance.
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

struct SuiteResult {
  Report report;
  std::vector<CsvTable> tables;
  double wall_time_seconds = 0.0;
};

/// Names accepted by run_suite: operator, kernels, liouville, equivalence.
const std::vector<std::string>& suite_names();

/// Runs one suite. Throws PreconditionError for an unknown name or invalid options.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace fraclap
