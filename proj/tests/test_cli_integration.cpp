#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(SQUIDGATE_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("squidgate_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

json load(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

int count_lines(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  int lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  return lines;
}

// index = (base-3 value of the levels) * (n_max + 1) + photon
int amp_index(const std::string& bits, int photon, int n_max) {
  int value = 0;
  for (char c : bits) value = value * 3 + (c - '0');
  return value * (n_max + 1) + photon;
}

std::complex<double> amp_at(const json& state, const std::string& bits,
                            int photon) {
  const int n_max = state["n_max"].get<int>();
  const json& pair = state["amplitudes"][amp_index(bits, photon, n_max)];
  return {pair[0].get<double>(), pair[1].get<double>()};
}

}  // namespace

TEST_CASE("simulate runs basis inputs through the schedule") {
  const fs::path dir = fresh_dir("sim_basis");

  CHECK(run_cli("simulate --input 111 --out " + dir.string()) == 0);
  const json t111 = load(dir / "trajectory_111.json");
  CHECK(std::abs(amp_at(t111["final_state"], "111", 0) -
                 std::complex<double>(-1.0, 0.0)) < 1e-10);
  CHECK(t111["vacuum_return"].get<double>() < 1e-12);
  CHECK(t111["steps"].size() == 7);
  CHECK(t111.contains("conventions"));
  CHECK(t111.contains("meta"));

  CHECK(run_cli("simulate --input 000 --out " + dir.string()) == 0);
  const json t000 = load(dir / "trajectory_000.json");
  CHECK(std::abs(amp_at(t000["final_state"], "000", 0) -
                 std::complex<double>(1.0, 0.0)) < 1e-12);
}

TEST_CASE("simulate --input all extracts the controlled-phase gate") {
  const fs::path dir = fresh_dir("sim_all");
  CHECK(run_cli("simulate --n 2 --input all --out " + dir.string()) == 0);

  const json report = load(dir / "gate_report.json");
  CHECK(report["n"] == 2);
  CHECK(report["fidelity"].get<double>() > 1.0 - 1e-10);
  CHECK(report["step_count"] == 5);
  const json& gate = report["gate"];
  REQUIRE(gate.size() == 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const std::complex<double> entry(gate[r][c][0].get<double>(),
                                       gate[r][c][1].get<double>());
      const std::complex<double> want =
          r == c ? (r == 3 ? -1.0 : 1.0) : 0.0;
      CHECK(std::abs(entry - want) < 1e-10);
    }
  }
}

TEST_CASE("verify passes on the bundled device and writes the trace CSV") {
  const fs::path dir = fresh_dir("verify_ok");
  CHECK(run_cli("verify --out " + dir.string()) == 0);

  const json report = load(dir / "verify_report.json");
  CHECK(report["pass"] == true);
  CHECK(report["truth_table"]["pass"] == true);
  CHECK(report["reference_trace"]["pass"] == true);
  CHECK(report["reference_trace"]["cells"] == 56);
  CHECK(report["reference_trace"]["mismatches"] == 0);
  CHECK(report["reference_trace"]["misprints_confirmed"] == 2);
  CHECK(report["coupling_rescaling"]["pass"] == true);
  CHECK(report["coupling_rescaling"]["worst_error"].get<double>() < 1e-10);

  // header + 56 cells
  CHECK(count_lines(dir / "trace_comparison.csv") == 57);
}

TEST_CASE("verify --n 4 checks the 16-input truth table") {
  const fs::path dir = fresh_dir("verify_n4");
  CHECK(run_cli("verify --n 4 --out " + dir.string()) == 0);
  const json report = load(dir / "verify_report.json");
  CHECK(report["pass"] == true);
  CHECK_FALSE(report.contains("reference_trace"));
}

TEST_CASE("verify fails on a schedule with the target window halved") {
  const fs::path dir = fresh_dir("verify_broken");
  REQUIRE(run_cli("simulate --input 111 --out " + dir.string()) == 0);

  json schedule = load(dir / "schedule.json");
  for (json& step : schedule["steps"]) {
    if (step["kind"] == "jc_full") {
      step["duration_s"] = step["duration_s"].get<double>() / 2.0;
    }
  }
  const fs::path broken = dir / "broken_schedule.json";
  {
    std::ofstream out(broken);
    out << schedule.dump(2);
  }

  CHECK(run_cli("verify --schedule " + broken.string() + " --out " +
                dir.string()) == 1);
  const json report = load(dir / "verify_report.json");
  CHECK(report["pass"] == false);
  CHECK(report["truth_table"]["pass"] == false);
  CHECK(report["truth_table"]["fidelity"].get<double>() < 1.0);
}

TEST_CASE("spectrum reports the level structure and potential profile") {
  const fs::path dir = fresh_dir("spectrum");
  CHECK(run_cli("spectrum --out " + dir.string()) == 0);

  const json solved = load(dir / "spectrum.json");
  const double nu02 = solved["nu_Hz"]["nu02"].get<double>();
  CHECK(std::abs(nu02 - 11.4e9) / 11.4e9 < 0.05);
  CHECK(solved["lambda_check"] == true);
  CHECK_FALSE(solved.contains("harmonic"));

  std::ifstream csv(dir / "potential.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "phi_Wb,phi_over_phi0,potential_J");
  CHECK(count_lines(dir / "potential.csv") == 1002);
}

TEST_CASE("spectrum --beta-l 0 reports the harmonic cross-check") {
  const fs::path dir = fresh_dir("spectrum_harmonic");
  CHECK(run_cli("spectrum --beta-l 0 --out " + dir.string()) == 0);
  const json solved = load(dir / "spectrum.json");
  REQUIRE(solved.contains("harmonic"));
  CHECK(solved["harmonic"]["max_relative_deviation"].get<double>() < 1e-3);
  CHECK(solved["lambda_check"] == false);
}

TEST_CASE("feasibility verdicts and overrides") {
  const fs::path dir = fresh_dir("feasibility");
  CHECK(run_cli("feasibility --out " + dir.string()) == 0);
  json report = load(dir / "feasibility.json");
  CHECK(report["verdict"] == "pass");
  REQUIRE(report["g"].size() == 3);
  for (const json& g : report["g"]) {
    CHECK(std::abs(g["value"].get<double>() - 7.5e9) / 7.5e9 < 0.10);
    CHECK(g["unit"] == "rad/s");
  }
  CHECK(report["convention_flags"]["photon_energy"] == "h_nu");

  CHECK(run_cli("feasibility --q 30 --out " + dir.string()) == 1);
  report = load(dir / "feasibility.json");
  CHECK(report["verdict"] == "fail");
  REQUIRE(report["failures"].size() == 1);
  CHECK(report["failures"][0].get<std::string>().find("kappa") !=
        std::string::npos);

  CHECK(run_cli("feasibility --mutual-m 0 --out " + dir.string()) == 0);
  report = load(dir / "feasibility.json");
  CHECK(report["zeta"]["value"].get<double>() == 0.0);
}

TEST_CASE("budget tabulates step counts against the conventional circuit") {
  const fs::path dir = fresh_dir("budget");
  CHECK(run_cli("budget --out " + dir.string()) == 0);
  const json budget = load(dir / "budget.json");
  CHECK(budget["steps"]["phase"] == 7);
  CHECK(budget["steps"]["cnot"] == 9);
  CHECK(budget["steps"]["conventional"] == 28);
  CHECK(budget["pass"] == true);

  const fs::path dir4 = fresh_dir("budget_n4");
  CHECK(run_cli("budget --n 4 --out " + dir4.string()) == 0);
  const json budget4 = load(dir4 / "budget.json");
  CHECK(budget4["steps"]["phase"] == 9);
  CHECK(budget4["steps"]["cnot"] == 11);
  CHECK(budget4["steps"]["conventional"].is_null());
}

TEST_CASE("reports are deterministic apart from the metadata block") {
  const fs::path dir_a = fresh_dir("det_a");
  const fs::path dir_b = fresh_dir("det_b");
  CHECK(run_cli("verify --seed 7 --out " + dir_a.string()) == 0);
  CHECK(run_cli("verify --seed 7 --out " + dir_b.string()) == 0);

  json a = load(dir_a / "verify_report.json");
  json b = load(dir_b / "verify_report.json");
  a.erase("meta");
  b.erase("meta");
  CHECK(a == b);

  // Different seed changes only the sampled rescaling factors, never the
  // verdict.
  const fs::path dir_c = fresh_dir("det_c");
  CHECK(run_cli("verify --seed 8 --out " + dir_c.string()) == 0);
  CHECK(load(dir_c / "verify_report.json")["pass"] == true);
}

TEST_CASE("a schedule written by simulate re-runs to the same trajectory") {
  const fs::path dir_a = fresh_dir("roundtrip_a");
  const fs::path dir_b = fresh_dir("roundtrip_b");
  REQUIRE(run_cli("simulate --input 110 --out " + dir_a.string()) == 0);
  REQUIRE(run_cli("simulate --input 110 --schedule " +
                  (dir_a / "schedule.json").string() + " --out " +
                  dir_b.string()) == 0);

  const json a = load(dir_a / "trajectory_110.json");
  const json b = load(dir_b / "trajectory_110.json");
  CHECK(a["steps"] == b["steps"]);
  CHECK(a["final_state"] == b["final_state"]);
}

TEST_CASE("usage and configuration errors exit with code 2") {
  const fs::path dir = fresh_dir("errors");

  const fs::path bad = dir / "bad.json";
  {
    std::ofstream out(bad);
    out << "{\"surprise\": 1}";
  }
  CHECK(run_cli("simulate --config " + bad.string() + " --out " +
                dir.string()) == 2);

  CHECK(run_cli("simulate --input 121 --out " + dir.string()) == 2);
  CHECK(run_cli("simulate --input 11 --out " + dir.string()) == 2);
  CHECK(run_cli("nonsense") == 2);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("spectrum --grid 4 --out " + dir.string()) == 2);
}

TEST_CASE("explicit config file reproduces the bundled defaults") {
  const fs::path dir_a = fresh_dir("cfg_a");
  const fs::path dir_b = fresh_dir("cfg_b");
  CHECK(run_cli("feasibility --out " + dir_a.string()) == 0);
  CHECK(run_cli(std::string("feasibility --config ") + SQUIDGATE_TABLE1_JSON +
                " --out " + dir_b.string()) == 0);
  json a = load(dir_a / "feasibility.json");
  json b = load(dir_b / "feasibility.json");
  a.erase("meta");
  b.erase("meta");
  CHECK(a == b);
}
