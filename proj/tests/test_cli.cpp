// Black-box checks of the command-line tool: spawn the real binary, capture
// both streams, and hold it to the documented exit codes and formats. The
// library is linked only to serve as the oracle for round-trip checks.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seirq/calibration.hpp"
#include "seirq/model.hpp"
#include "seirq/trajectory.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

const fs::path& temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("seirq_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

// Runs the tool with the given argument string; stdout and stderr are
// captured through temporary files.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = temp_dir() / ("out" + std::to_string(counter));
  const fs::path err = temp_dir() / ("err" + std::to_string(counter));
  ++counter;

  const std::string cmd = std::string("'") + SEIRQ_CLI_PATH + "' " + args +
                          " > '" + out.string() + "' 2> '" + err.string() +
                          "'";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out);
  r.err = read_file(err);
  return r;
}

std::string scenario_path() {
  return std::string(SEIRQ_SCENARIO_DIR) + "/uzbekistan.json";
}

struct CsvRow {
  long n;
  seirq::SimplexState x;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  REQUIRE(line == "n,s,e,i,r");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    CsvRow row{};
    REQUIRE(std::sscanf(line.c_str(), "%ld,%lf,%lf,%lf,%lf", &row.n,
                        &row.x.s, &row.x.e, &row.x.i, &row.x.r) == 5);
    rows.push_back(row);
  }
  return rows;
}

const seirq::Params kUz{0.12, 1.0, 0.1, 0.066};

}  // namespace

TEST_CASE("simulate: scenario config, CSV out, summary on stderr") {
  const RunResult r = run_cli("simulate --config " + scenario_path());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find('\r') == std::string::npos);

  const std::vector<CsvRow> rows = parse_csv(r.out);
  REQUIRE(rows.size() == 301);
  CHECK(rows[0].n == 0);
  CHECK(rows[0].x.s == 0.99999);
  CHECK(rows[0].x.i == 0.00001);
  // 17 significant digits round-trip exactly, so each printed row must be
  // one library step ahead of the previous one.
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const seirq::SimplexState next = seirq::step(rows[k].x, kUz);
    CHECK(std::fabs(next.s - rows[k + 1].x.s) <= 1e-12);
    CHECK(std::fabs(next.e - rows[k + 1].x.e) <= 1e-12);
    CHECK(std::fabs(next.i - rows[k + 1].x.i) <= 1e-12);
    CHECK(std::fabs(next.r - rows[k + 1].x.r) <= 1e-12);
  }

  const json summary = json::parse(r.err);
  CHECK(summary["days"] == 300);
  CHECK(summary["peak"]["day"] == 145);
  CHECK(summary["peak"]["infectious"] == 0.23082877522136153);
  CHECK(summary["completion"]["day"].is_null());
  CHECK(summary["completion"]["threshold"] == 1.0 / 34000000.0);
  CHECK(summary["decay_entry_day"] == 145);
  CHECK(summary["limit"]["converged"] == true);
  CHECK(summary["limit"]["iterations"] == 587);
  CHECK(summary["limit"]["critical_alpha"] == 0.3313253012048193);
  CHECK(summary["limit"]["below_critical"] == true);
  CHECK(summary["population"] == 34000000.0);
}

TEST_CASE("simulate: counts and fractions produce identical output") {
  const std::string common =
      "simulate --a 0.1 --b 0.066 --beta 0.12 --q 1 --steps 50 ";
  const RunResult counts = run_cli(
      common +
      "--counts --population 1000000 --s0 999990 --e0 0 --i0 10 --r0 0");
  const RunResult fractions =
      run_cli(common + "--s0 0.99999 --e0 0 --i0 0.00001 --r0 0");
  REQUIRE(counts.exit_code == 0);
  REQUIRE(fractions.exit_code == 0);
  CHECK(counts.out == fractions.out);

  const json summary = json::parse(counts.err);
  CHECK(summary["peak"]["infectious_count"].is_number());
}

TEST_CASE("simulate: flags beat the config file") {
  const RunResult r =
      run_cli("simulate --config " + scenario_path() + " --steps 10");
  REQUIRE(r.exit_code == 0);
  CHECK(parse_csv(r.out).size() == 11);
  CHECK(json::parse(r.err)["days"] == 10);
}

TEST_CASE("simulate: json format embeds summary and states") {
  const fs::path out = temp_dir() / "sim.json";
  const RunResult r = run_cli("simulate --config " + scenario_path() +
                              " --steps 20 --format json --out '" +
                              out.string() + "'");
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.empty());  // summary lives inside the document
  const json doc = json::parse(read_file(out));
  CHECK(doc["summary"]["days"] == 20);
  REQUIRE(doc["states"].size() == 21);
  CHECK(doc["states"][0]["s"] == 0.99999);
  CHECK(doc["states"][0]["n"] == 0);
}

TEST_CASE("simulate: summary can be routed to a file") {
  const fs::path summary = temp_dir() / "summary.json";
  const RunResult r = run_cli("simulate --config " + scenario_path() +
                              " --steps 5 --summary '" + summary.string() +
                              "'");
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.empty());
  CHECK(json::parse(read_file(summary))["days"] == 5);
}

TEST_CASE("simulate: usage failures exit 2 with a diagnostic") {
  SUBCASE("missing parameter") {
    const RunResult r = run_cli("simulate --a 0.1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("missing") != std::string::npos);
  }
  SUBCASE("inadmissible parameters") {
    const RunResult r =
        run_cli("simulate --a 1.5 --b 0.1 --beta 0.1 --q 1 --s0 1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("inadmissible") != std::string::npos);
  }
  SUBCASE("state off the simplex") {
    const RunResult r =
        run_cli("simulate --a 0.1 --b 0.1 --beta 0.1 --q 1 --s0 0.5");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("counts that do not sum to the population") {
    const RunResult r = run_cli(
        "simulate --a 0.1 --b 0.1 --beta 0.1 --q 1 "
        "--counts --population 1000 --s0 900 --i0 50");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("population") != std::string::npos);
  }
  SUBCASE("missing config file") {
    const RunResult r =
        run_cli("simulate --config " + (temp_dir() / "no.json").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("config") != std::string::npos);
  }
  SUBCASE("unknown format") {
    const RunResult r = run_cli("simulate --config " + scenario_path() +
                                " --format yaml");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("analyze: default sweep classifies both sides of the threshold") {
  const RunResult r =
      run_cli("analyze --a 0.1 --b 0.066 --beta 0.12 --q 1");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["critical_alpha"] == 0.3313253012048193);
  REQUIRE(doc["reports"].size() == 11);
  CHECK(doc["reports"][0]["alpha"] == 0.0);
  CHECK(doc["reports"][10]["alpha"] == 1.0);
  CHECK(doc["reports"][3]["regime"] == "below");
  CHECK(doc["reports"][3]["dims"]["stable"] == 2);
  CHECK(doc["reports"][4]["regime"] == "above");
  CHECK(doc["reports"][4]["dims"]["unstable"] == 1);
  for (const json& rep : doc["reports"]) CHECK(rep["mu1"] == 1.0);
}

TEST_CASE("analyze: explicit alphas and the no-threshold case") {
  const RunResult r =
      run_cli("analyze --a 0.1 --b 0.066 --beta 0 --q 1 --alpha 0.5");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["critical_alpha"].is_null());
  REQUIRE(doc["reports"].size() == 1);
  CHECK(doc["reports"][0]["regime"] == "none");

  CHECK(run_cli("analyze --a 0.1 --b 0.1 --beta 0.1 --q 1 --alpha 1.5")
            .exit_code == 2);
}

TEST_CASE("qso: dump plus verdict, exit mirrors the axioms") {
  SUBCASE("admissible parameters pass") {
    const RunResult r = run_cli("qso --a 0.1 --b 0.066 --beta 0.12 --q 1");
    REQUIRE(r.exit_code == 0);
    const json verdict = json::parse(r.err);
    CHECK(verdict["symmetry_ok"] == true);
    CHECK(verdict["nonneg_ok"] == true);
    CHECK(verdict["stochastic_ok"] == true);

    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
      int i = 0, j = 0, k = 0;
      double value = 0;
      CHECK(std::sscanf(line.c_str(), "%d %d %d %lf", &i, &j, &k, &value) ==
            4);
      ++count;
    }
    CHECK(count == 23);
  }
  SUBCASE("violated axioms exit 3 but still dump") {
    const RunResult r = run_cli("qso --a 0.5 --b 0.5 --beta 0.8 --q 2");
    CHECK(r.exit_code == 3);
    CHECK(r.out.rfind("1 1 1 ", 0) == 0);
    const json verdict = json::parse(r.err);
    CHECK(verdict["nonneg_ok"] == false);
    CHECK(verdict["worst_negativity"] == doctest::Approx(0.3));
  }
}

TEST_CASE("fit: recovers a planted grid point") {
  const seirq::AxisRange ax_a{0.08, 0.12, 5};
  const seirq::AxisRange ax_b{0.05, 0.08, 4};
  const seirq::AxisRange ax_beta{0.10, 0.14, 5};
  seirq::Params planted{ax_beta.values()[2], 1.0, ax_a.values()[1],
                        ax_b.values()[1]};

  const seirq::SimplexState x0{0.99999, 0.0, 0.00001, 0.0};
  const seirq::Trajectory traj = seirq::simulate(x0, planted, 3000);
  const long peak_day = seirq::peak(traj).day;
  const std::optional<long> comp = seirq::completion_day(traj, 1.0 / 34000000.0);
  REQUIRE(comp.has_value());

  const std::string args =
      "fit --peak-day " + std::to_string(peak_day) + " --completion-day " +
      std::to_string(*comp) +
      " --population 34000000 --s0 0.99999 --e0 0 --i0 0.00001 --r0 0"
      " --box-a 0.08 0.12 5 --box-b 0.05 0.08 4 --box-beta 0.10 0.14 5"
      " --box-q 1 1 1";
  const RunResult r = run_cli(args);
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["evaluations"] == 100);
  CHECK(doc["best"]["loss"] == 0.0);
  CHECK(doc["best"]["params"]["a"] == planted.a);
  CHECK(doc["best"]["params"]["b"] == planted.b);
  CHECK(doc["best"]["params"]["beta"] == planted.beta);
  CHECK(doc["best"]["params"]["q"] == 1.0);
  REQUIRE(doc["ranked"].size() >= 1);
  CHECK(doc["ranked"][0] == doc["best"]);
}

TEST_CASE("fit: target and box can come from a config file") {
  const fs::path cfg = temp_dir() / "fit_cfg.json";
  write_file(cfg, R"({
    "peak_day": 145,
    "population": 34000000,
    "s0": 0.99999, "e0": 0, "i0": 0.00001, "r0": 0,
    "box_a": [0.09, 0.11, 3],
    "box_b": [0.06, 0.07, 2],
    "box_beta": [0.11, 0.13, 3],
    "box_q": [1, 1, 1]
  })");
  const RunResult r = run_cli("fit --config '" + cfg.string() + "'");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["evaluations"] == 18);
  CHECK(doc["target"]["completion_day"].is_null());
  CHECK(doc["best"]["loss"].is_number());
}

TEST_CASE("fit: usage failures") {
  SUBCASE("peak day is required") {
    const RunResult r =
        run_cli("fit --population 1000 --s0 0.9 --i0 0.1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("peak-day") != std::string::npos);
  }
  SUBCASE("population is required") {
    const RunResult r = run_cli("fit --peak-day 100 --s0 0.9 --i0 0.1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("population") != std::string::npos);
  }
  SUBCASE("oversized grids are refused") {
    const RunResult r = run_cli(
        "fit --peak-day 100 --population 1000 --s0 0.9 --i0 0.1"
        " --box-a 0 1 101 --box-b 0 1 101 --box-beta 0.1 0.2 101"
        " --box-q 1 1 1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("grid too large") != std::string::npos);
  }
  SUBCASE("boxes outside the admissible region are refused") {
    const RunResult r = run_cli(
        "fit --peak-day 100 --population 1000 --s0 0.9 --i0 0.1"
        " --box-beta 0.5 1.5 3");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("admissible") != std::string::npos);
  }
}

TEST_CASE("top level flags and exit codes") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("simulate --help").exit_code == 0);
  CHECK(run_cli("--version").out.find("0.1.0") == 0);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("simulate --bogus 1").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}
