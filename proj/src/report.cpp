#include "fraclap/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "fraclap/errors.hpp"

namespace fraclap {

Report::Report(std::string suite_name, FracParams params) : suite_(std::move(suite_name)), params_(params) {}

void Report::add_upper_bound(std::string name, std::string metric, double value, double threshold) {
  cases_.push_back({std::move(name), std::move(metric), value, threshold, value <= threshold});
}

void Report::add_lower_bound(std::string name, std::string metric, double value, double threshold) {
  cases_.push_back({std::move(name), std::move(metric), value, threshold, value >= threshold});
}

void Report::add_case(ReportCase c) { cases_.push_back(std::move(c)); }

void Report::add_exponent(std::string name, double fitted, double expected) {
  exponents_.push_back({std::move(name), fitted, expected});
}

void Report::add_note(std::string note) { notes_.push_back(std::move(note)); }

void Report::merge(const Report& other, const std::string& prefix) {
  for (auto c : other.cases_) {
    c.name = prefix + c.name;
    cases_.push_back(std::move(c));
  }
  for (auto e : other.exponents_) {
    e.name = prefix + e.name;
    exponents_.push_back(std::move(e));
  }
  for (const auto& s : other.notes_) notes_.push_back(prefix + s);
}

bool Report::overall_pass() const {
  for (const auto& c : cases_) {
    if (!c.pass) return false;
  }
  return true;
}

const ReportCase& Report::find(const std::string& name) const {
  for (const auto& c : cases_) {
    if (c.name == name) return c;
  }
  throw PreconditionError("report '" + suite_ + "' has no case '" + name + "'");
}

namespace {
// JSON has no representation for inf/nan.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}
}  // namespace

std::string to_json(const Report& report, double wall_time_seconds) {
  nlohmann::json doc;
  doc["suite"] = report.suite_name();
  doc["params"] = {{"n", report.params().n()}, {"alpha", report.params().alpha()}};
  auto cases = nlohmann::json::array();
  for (const auto& c : report.cases()) {
    cases.push_back({{"name", c.name},
                     {"metric", c.metric},
                     {"value", number(c.value)},
                     {"threshold", number(c.threshold)},
                     {"pass", c.pass}});
  }
  doc["cases"] = cases;
  auto exps = nlohmann::json::array();
  for (const auto& e : report.exponents()) {
    exps.push_back({{"name", e.name}, {"fitted", number(e.fitted)}, {"expected", number(e.expected)}});
  }
  doc["exponents"] = exps;
  if (!report.notes().empty()) doc["notes"] = report.notes();
  doc["overall_pass"] = report.overall_pass();
  doc["wall_time_seconds"] = wall_time_seconds;
  return doc.dump(2) + "\n";
}

std::string to_csv(const CsvTable& table) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << "\n" << std::setprecision(17);
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

void write_file_atomically(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace fraclap
