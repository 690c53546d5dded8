#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crowdsel/cli.hpp"
#include "crowdsel/dataset.hpp"
#include "crowdsel/report.hpp"
#include "synthetic.hpp"

using namespace crowdsel;
using nlohmann::json;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"crowdsel"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path test_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "crowdsel_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_toy_csv() {
  // Feature f0 equals the class; f1 and f2 are structured fillers.
  const auto path = test_dir() / "toy.csv";
  std::ofstream f(path);
  f << "f0,f1,f2,class\n";
  for (int i = 0; i < 16; ++i) {
    const int label = i % 2;
    f << label << ',' << 0.1 * i << ',' << (i % 3) << ',' << (label ? "pos" : "neg") << '\n';
  }
  return path.string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli rank: crowding JSON report") {
  const std::string csv = write_toy_csv();
  const CliResult r = run_cli({"rank", csv, "--method", "crowding"});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["manifest"]["command"] == "rank");
  CHECK(report["manifest"]["dataset"]["name"] == "toy");
  CHECK(report["manifest"]["toolkit_version"].is_string());
  CHECK(report["ranking"]["method"] == "crowding");
  CHECK(report["ranking"]["order"].size() == 3);
  const auto& first = report["ranking"]["entries"][0];
  CHECK(first["score"].contains("boundary_count"));
  CHECK(first["score"].contains("finite_sum"));
}

TEST_CASE("cli rank: variance method and csv format") {
  const std::string csv = write_toy_csv();
  const CliResult r = run_cli({"rank", csv, "--method", "variance", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("rank,index,name,score") == 0);
}

TEST_CASE("cli rank: unknown method exits 3 with usage text") {
  const std::string csv = write_toy_csv();
  const CliResult r = run_cli({"rank", csv, "--method", "mystery"});
  CHECK(r.code == 3);
  CHECK((r.err + r.out).find("--method") != std::string::npos);
}

TEST_CASE("cli rank: missing dataset exits 2") {
  const CliResult r = run_cli({"rank", "/nonexistent/x.csv"});
  CHECK(r.code == 2);
}

TEST_CASE("cli select: filter report carries selection and evaluation") {
  const std::string csv = write_toy_csv();
  const CliResult r = run_cli({"select", csv, "--mode", "filter", "--method", "variance",
                               "--k", "2", "--folds", "4", "--reps", "3", "--seed", "7",
                               "--knn-k", "1"});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["selection"]["method"] == "filter");
  CHECK(report["selection"]["selected"].size() == 2);
  CHECK(report["evaluation"]["per_run"].size() == 3);
  const double mean = report["evaluation"]["mean"];
  CHECK(mean >= 0.0);
  CHECK(mean <= 100.0);
}

TEST_CASE("cli select: identical flags give byte-identical reports") {
  const std::string csv = write_toy_csv();
  const std::vector<std::string> args{"select", csv,      "--mode", "filter", "--method",
                                      "crowding", "--k",  "2",      "--folds", "4",
                                      "--reps",   "1",    "--seed", "7",      "--knn-k", "1"};
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("cli select: wrapper with threshold on a perfect feature") {
  const std::string csv = write_toy_csv();
  const CliResult r = run_cli({"select", csv, "--mode", "wrapper", "--method", "crowding",
                               "--folds", "4", "--reps", "1", "--seed", "7", "--knn-k", "1",
                               "--threshold", "100"});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["selection"]["method"] == "wrapper");
  CHECK(report["selection"]["best_run"]["accuracy"] == 100.0);
  CHECK(report["selection"]["runs"][0].contains("trace"));  // reps == 1 keeps the trace
  CHECK(report["evaluation"]["best"] == 100.0);
}

TEST_CASE("cli select: filter without --k exits 3") {
  const std::string csv = write_toy_csv();
  const CliResult r = run_cli({"select", csv, "--mode", "filter"});
  CHECK(r.code == 3);
}

TEST_CASE("cli select: JSON report round-trips through parse and re-dump") {
  const std::string csv = write_toy_csv();
  const CliResult r = run_cli({"select", csv, "--mode", "filter", "--method", "pearson",
                               "--k", "1", "--folds", "4", "--reps", "2", "--seed", "3",
                               "--knn-k", "1"});
  REQUIRE(r.code == 0);
  CHECK(canonical_dump(json::parse(r.out)) == r.out);
}

TEST_CASE("cli compare: a report against itself is not significant") {
  const std::string csv = write_toy_csv();
  const auto report_path = (test_dir() / "self.json").string();
  const CliResult made =
      run_cli({"select", csv, "--mode", "filter", "--method", "variance", "--k", "2",
               "--folds", "4", "--reps", "5", "--seed", "11", "--knn-k", "1", "--output",
               report_path});
  REQUIRE(made.code == 0);

  const CliResult r =
      run_cli({"compare", report_path, report_path, "--dataset", "toy", "--format", "json"});
  REQUIRE(r.code == 0);
  const json outcome = json::parse(r.out);
  CHECK(outcome["p_value"] == 1.0);
  CHECK(outcome["significant_at_005"] == false);
}

TEST_CASE("cli compare: hand-built per_run arrays reproduce the exact p") {
  auto fake_report = [&](const std::string& name, const std::vector<double>& per_run) {
    json j{{"manifest", {{"dataset", {{"name", "demo"}}}}},
           {"evaluation", {{"per_run", per_run}}}};
    const auto path = test_dir() / (name + ".json");
    std::ofstream f(path);
    f << j.dump(2);
    return path.string();
  };
  const std::string a = fake_report("a", {1, 2, 3});
  const std::string b = fake_report("b", {4, 5, 6});
  const CliResult r = run_cli({"compare", a, b, "--dataset", "demo", "--format", "json"});
  REQUIRE(r.code == 0);
  const json outcome = json::parse(r.out);
  CHECK(outcome["p_value"] == 0.1);
  CHECK(outcome["u_statistic"] == 0.0);
  CHECK(outcome["method"] == "exact");
}

TEST_CASE("cli compare: mismatched dataset key exits 3") {
  const std::string csv = write_toy_csv();
  const auto report_path = (test_dir() / "keyed.json").string();
  REQUIRE(run_cli({"select", csv, "--mode", "filter", "--method", "variance", "--k", "1",
                   "--folds", "4", "--reps", "2", "--seed", "1", "--knn-k", "1", "--output",
                   report_path})
              .code == 0);
  const CliResult r = run_cli({"compare", report_path, report_path, "--dataset", "other"});
  CHECK(r.code == 3);
}

TEST_CASE("cli benchmark: cross product, partial failure, round-trip") {
  const std::string csv = write_toy_csv();
  const auto dir = test_dir() / "bench_out";
  const auto config_path = test_dir() / "bench.json";
  {
    json config{{"folds", 4},
                {"repetitions", 2},
                {"seed", 5},
                {"classifier", "knn"},
                {"knn_k", 1},
                {"methods", {"variance", "pearson"}},
                {"datasets",
                 {{{"name", "toy"}, {"path", csv}, {"k", 2}},
                  {{"name", "ghost"}, {"path", "/nonexistent/ghost.csv"}, {"k", 2}}}}};
    std::ofstream f(config_path);
    f << config.dump(2);
  }
  const CliResult r = run_cli({"benchmark", config_path.string(), "--out", dir.string()});
  CHECK(r.code == 1);  // ghost dataset fails, run continues

  const json report = json::parse(slurp(dir / "report.json"));
  CHECK(report["rows"].size() == 2);  // toy x {variance, pearson}
  CHECK(report["failures"].size() == 1);
  CHECK(report["failures"][0]["dataset"] == "ghost");
  CHECK(canonical_dump(report) == slurp(dir / "report.json"));

  const std::string md = slurp(dir / "report.md");
  CHECK(md.find("| dataset |") != std::string::npos);
}

TEST_CASE("cli benchmark: empty dataset list exits 3") {
  const auto config_path = test_dir() / "empty.json";
  {
    std::ofstream f(config_path);
    f << R"({"datasets": [], "methods": ["variance"]})";
  }
  const CliResult r = run_cli({"benchmark", config_path.string()});
  CHECK(r.code == 3);
}

TEST_CASE("cli: no subcommand exits with usage error") {
  const CliResult r = run_cli({});
  CHECK(r.code == 3);
}

TEST_CASE("cli: --help succeeds") {
  const CliResult r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("rank") != std::string::npos);
}
