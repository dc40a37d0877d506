#pragma once

#include <string>
#include <vector>

#include "fraclap/params.hpp"

namespace fraclap {

struct ReportCase {
  std::string name;
  std::string metric;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct FittedExponent {
  std::string name;
  double fitted = 0.0;
  double expected = 0.0;
};

/// Outcome of a verification suite. overall_pass() is the conjunction of the case flags.
class Report {
 public:
  Report(std::string suite_name, FracParams params);

  /// Records a case that passes when value <= threshold.
  void add_upper_bound(std::string name, std::string metric, double value, double threshold);
  /// Records a case that passes when value >= threshold.
  void add_lower_bound(std::string name, std::string metric, double value, double threshold);
  void add_case(ReportCase c);
  void add_exponent(std::string name, double fitted, double expected);
  void add_note(std::string note);
  /// Appends another report's cases (names prefixed), exponents and notes.
  void merge(const Report& other, const std::string& prefix);

  const std::string& suite_name() const { return suite_; }
  const FracParams& params() const { return params_; }
  const std::vector<ReportCase>& cases() const { return cases_; }
  const std::vector<FittedExponent>& exponents() const { return exponents_; }
  const std::vector<std::string>& notes() const { return notes_; }
  bool overall_pass() const;
  const ReportCase& find(const std::string& name) const;

 private:
  std::string suite_;
  FracParams params_;
  std::vector<ReportCase> cases_;
  std::vector<FittedExponent> exponents_;
  std::vector<std::string> notes_;
};

/// JSON document {suite, params:{n,alpha}, cases:[...], exponents:[...], overall_pass, wall_time_seconds}.
std::string to_json(const Report& report, double wall_time_seconds);

/// A CSV table: header row then numeric rows.
struct CsvTable {
  std::string file_name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string to_csv(const CsvTable& table);

/// Writes `contents` to `path` via a temporary file and rename.
void write_file_atomically(const std::string& path, const std::string& contents);

}  // namespace fraclap
