#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(FRACLAP_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fraclap-cli-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("usage errors exit with status 2") {
  const fs::path dir = scratch("usage");
  CHECK(run("suite all --alpha 2.5 --out " + (dir / "o").string(), dir / "log") == 2);
  CHECK(slurp(dir / "log").find("alpha must lie in (0,2)") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "o" / "report.json"));
  CHECK(run("suite nonsense", dir / "log") == 2);
  CHECK(run("suite operator --n 5", dir / "log") == 2);
  CHECK(run("suite operator --grid 17", dir / "log") == 2);
  CHECK(run("", dir / "log") == 2);
}

TEST_CASE("operator suite writes a passing report") {
  const fs::path dir = scratch("operator");
  CHECK(run("suite operator --n 2 --alpha 1.0 --out " + dir.string(), dir / "log") == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(j["suite"] == "operator");
  CHECK(j["overall_pass"] == true);
  CHECK(j["params"]["n"] == 2);
  bool constants = false, cross = false;
  for (const auto& c : j["cases"]) {
    constants |= c["name"] == "constants_validated";
    cross |= c["name"] == "pv_vs_spectral_gaussian";
  }
  CHECK(constants);
  CHECK(cross);
  CHECK(fs::exists(dir / "cross_evaluator.csv"));
}

TEST_CASE("liouville suite writes its tables, and reruns are deterministic") {
  const fs::path a = scratch("liouville-a");
  const fs::path b = scratch("liouville-b");
  const int status = run("suite liouville --n 2 --alpha 1.0 --out " + a.string(), a / "log");
  CHECK(status == 0);
  CHECK(fs::exists(a / "k_vs_pairing.csv"));
  CHECK(fs::exists(a / "r_vs_I2.csv"));
  CHECK(fs::exists(a / "k_vs_I1.csv"));
  const auto ja = nlohmann::json::parse(slurp(a / "report.json"));
  CHECK((status == 0) == ja["overall_pass"].get<bool>());

  CHECK(run("suite liouville --no-csv --out " + b.string(), b / "log") == status);
  CHECK_FALSE(fs::exists(b / "k_vs_pairing.csv"));
  const auto jb = nlohmann::json::parse(slurp(b / "report.json"));
  REQUIRE(ja["cases"].size() == jb["cases"].size());
  for (std::size_t i = 0; i < ja["cases"].size(); ++i) {
    CHECK(ja["cases"][i]["name"] == jb["cases"][i]["name"]);
    const double va = ja["cases"][i]["value"].get<double>();
    const double vb = jb["cases"][i]["value"].get<double>();
    CHECK(std::abs(va - vb) <= 1e-12 * std::max(1.0, std::abs(va)));
  }
}

TEST_CASE("all suites produce per-suite and merged reports") {
  const fs::path dir = scratch("all");
  const int status = run("suite all --out " + dir.string(), dir / "log");
  for (const char* s : {"operator", "kernels", "liouville", "equivalence"})
    CHECK(fs::exists(dir / (std::string(s) + ".json")));
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(j["suite"] == "all");
  CHECK((status == 0) == j["overall_pass"].get<bool>());
  CHECK(status == 0);
}
