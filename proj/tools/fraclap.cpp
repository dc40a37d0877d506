// fraclap: runs the verification suites and writes JSON reports and CSV tables.
//
//   fraclap suite {operator|kernels|liouville|equivalence|all} [--n 2] [--alpha 1.0]
//           [--grid 256] [--box 12] [--tol 1e-8] [--out ./fraclap-out] [--csv|--no-csv] [--seed 0]
//
// Exit status: 0 when every case passes, 1 when a suite fails, 2 on invalid usage.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "fraclap/errors.hpp"
#include "fraclap/params.hpp"
#include "fraclap/suites.hpp"

namespace {

void write_result(const fraclap::SuiteResult& r, const std::filesystem::path& dir, const std::string& json_name,
                  bool csv) {
  fraclap::write_file_atomically((dir / json_name).string(), fraclap::to_json(r.report, r.wall_time_seconds));
  if (!csv) return;
  for (const auto& t : r.tables) fraclap::write_file_atomically((dir / t.file_name).string(), fraclap::to_csv(t));
}

void print_summary(const fraclap::SuiteResult& r) {
  for (const auto& c : r.report.cases())
    std::cout << (c.pass ? "  pass  " : "  FAIL  ") << c.name << "  " << c.metric << " = " << c.value
              << " (threshold " << c.threshold << ")\n";
  std::cout << r.report.suite_name() << ": " << (r.report.overall_pass() ? "PASS" : "FAIL") << " in "
            << r.wall_time_seconds << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for the fractional Laplacian"};
  app.require_subcommand(1);
  auto* suite = app.add_subcommand("suite", "Run a verification suite");
  std::string name;
  fraclap::SuiteOptions opt;
  std::string out_dir = "./fraclap-out";
  bool csv = true;
  suite->add_option("name", name, "operator, kernels, liouville, equivalence or all")
      ->required()
      ->check(CLI::IsMember({"operator", "kernels", "liouville", "equivalence", "all"}));
  suite->add_option("--n", opt.n, "Dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
  suite->add_option("--alpha", opt.alpha, "Order alpha in (0, 2)");
  suite->add_option("--grid", opt.grid, "Spectral grid points per axis (n = 3 uses at most 128)");
  suite->add_option("--box", opt.box, "Spectral box half-width");
  suite->add_option("--tol", opt.tol, "PV quadrature tolerance");
  suite->add_option("--out", out_dir, "Output directory");
  suite->add_flag("--csv,!--no-csv", csv, "Write CSV tables (default on)");
  suite->add_option("--seed", opt.seed, "Seed for random test points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const fraclap::FracParams params(opt.n, opt.alpha);
    (void)params;
    if (opt.grid < 16 || opt.grid % 2 != 0) throw fraclap::PreconditionError("grid must be even and >= 16");
    if (!(opt.box > 0.0)) throw fraclap::PreconditionError("box must be positive");
    if (!(opt.tol > 0.0)) throw fraclap::PreconditionError("tol must be positive");
  } catch (const fraclap::PreconditionError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    if (name != "all") {
      const auto r = fraclap::run_suite(name, opt);
      write_result(r, dir, "report.json", csv);
      print_summary(r);
      return r.report.overall_pass() ? 0 : 1;
    }
    fraclap::SuiteResult all{fraclap::Report("all", fraclap::FracParams(opt.n, opt.alpha)), {}, 0.0};
    for (const auto& s : fraclap::suite_names()) {
      const auto r = fraclap::run_suite(s, opt);
      write_result(r, dir, s + ".json", csv);
      print_summary(r);
      all.report.merge(r.report, s + ".");
      all.wall_time_seconds += r.wall_time_seconds;
    }
    write_result(all, dir, "report.json", false);
    std::cout << "all: " << (all.report.overall_pass() ? "PASS" : "FAIL") << "\n";
    return all.report.overall_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
