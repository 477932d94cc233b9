#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracle_helpers.hpp"
#include "squidgate/protocol.hpp"
#include "squidgate/verify.hpp"

using namespace squidgate;
using oracle::ket;
using complexd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
const std::vector<double> kG3{7.5e9, 7.5e9, 7.5e9};
constexpr double kRabi = 1.5e10;

Schedule reference_schedule() {
  return build_cphase_schedule(3, kG3, kRabi, 0.0);
}

GateReport report_for(const Eigen::MatrixXcd& gate, int n) {
  GateReport r;
  r.n = n;
  r.gate = gate;
  return r;
}

}  // namespace

TEST_CASE("target gates have the expected shape") {
  const Eigen::MatrixXcd cz = cphase_target(3);
  CHECK(cz.rows() == 8);
  CHECK(std::abs(cz(7, 7) - complexd(-1.0)) < 1e-15);
  CHECK(std::abs(cz(0, 0) - complexd(1.0)) < 1e-15);
  CHECK((cz * cz - Eigen::MatrixXcd::Identity(8, 8)).norm() < 1e-15);

  const Eigen::MatrixXcd cx = cnot_target(2);
  CHECK(std::abs(cx(3, 2) - complexd(1.0)) < 1e-15);
  CHECK(std::abs(cx(2, 3) - complexd(1.0)) < 1e-15);
  CHECK(std::abs(cx(2, 2)) < 1e-15);
  CHECK((cx * cx - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-15);

  CHECK_THROWS_AS(cphase_target(0), std::invalid_argument);
  CHECK_THROWS_AS(cnot_target(1), std::invalid_argument);
}

TEST_CASE("gate fidelity is a phase-invariant overlap") {
  std::mt19937 rng(555);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) a(i, j) = complexd(gauss(rng), gauss(rng));
  }
  const Eigen::MatrixXcd u =
      Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ();

  CHECK(gate_fidelity(u, u) == doctest::Approx(1.0).epsilon(1e-12));
  for (double theta : {0.3, kPi / 7.0, -1.9}) {
    const complexd phase = std::exp(complexd(0.0, theta));
    CHECK(gate_fidelity(phase * u, u) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gate_fidelity(u, phase * u) == doctest::Approx(1.0).epsilon(1e-12));
  }

  Eigen::MatrixXcd z = Eigen::MatrixXcd::Identity(2, 2);
  z(1, 1) = -1.0;
  CHECK(gate_fidelity(Eigen::MatrixXcd::Identity(2, 2), z) ==
        doctest::Approx(0.0));

  CHECK_THROWS_AS(gate_fidelity(u, Eigen::MatrixXcd::Identity(2, 2)),
                  std::invalid_argument);
}

TEST_CASE("truth table check accepts the ideal gate up to global phase") {
  const GateReport ideal = extract_gate(reference_schedule());
  const TruthTableCheck check = check_truth_table(ideal, 3);
  CHECK(check.pass);
  CHECK(check.max_error < 1e-10);

  GateReport rotated = ideal;
  rotated.gate *= std::exp(complexd(0.0, 1.1));
  const TruthTableCheck aligned = check_truth_table(rotated, 3);
  CHECK(aligned.pass);
  CHECK(aligned.max_error < 1e-10);
}

TEST_CASE("truth table check rejects the identity") {
  const TruthTableCheck check =
      check_truth_table(report_for(Eigen::MatrixXcd::Identity(8, 8), 3), 3);
  CHECK_FALSE(check.pass);
  CHECK(check.max_error == doctest::Approx(2.0));

  CHECK_THROWS_AS(
      check_truth_table(report_for(Eigen::MatrixXcd::Identity(8, 8), 3), 2),
      std::invalid_argument);
}

TEST_CASE("truth table verdict agrees with the fidelity threshold") {
  std::mt19937 rng(808);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int n : {2, 3, 4}) {
    const int dim = 1 << n;
    std::vector<Eigen::MatrixXcd> gates;
    gates.push_back(
        extract_gate(build_cphase_schedule(n, std::vector<double>(n, 7.5e9),
                                           kRabi, 0.0))
            .gate);
    gates.push_back(Eigen::MatrixXcd::Identity(dim, dim));
    gates.push_back(cnot_target(n));
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) a(i, j) = complexd(gauss(rng), gauss(rng));
    }
    gates.emplace_back(Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ());

    for (const Eigen::MatrixXcd& gate : gates) {
      const bool by_table = check_truth_table(report_for(gate, n), n).pass;
      const bool by_fidelity =
          gate_fidelity(gate, cphase_target(n)) >= 1.0 - 1e-10;
      CHECK(by_table == by_fidelity);
    }
  }
}

TEST_CASE("full trace comparison: 56 cells, two known misprints, no misses") {
  const TraceComparison cmp = check_reference_trace_all(reference_schedule());
  CHECK(cmp.cells.size() == 56);
  CHECK(cmp.mismatches == 0);
  CHECK(cmp.discrepancies_confirmed == 2);
  CHECK(cmp.pass());

  int flagged = 0;
  for (const TraceCell& cell : cmp.cells) {
    if (cell.known_discrepancy) {
      ++flagged;
      CHECK(cell.step == 4);
      CHECK((cell.input == "100" || cell.input == "101"));
      CHECK_FALSE(cell.matches);
      // Printed -i, dynamics -1: the states differ by |i - 1| = sqrt(2).
      CHECK(cell.delta == doctest::Approx(std::sqrt(2.0)));
      CHECK(cell.resolved_delta < 1e-12);
      CHECK(cell.expected.substr(0, 2) == "-i");
      CHECK(cell.resolved.substr(0, 2) == "-1");
    } else {
      CHECK(cell.matches);
      CHECK(cell.delta < 1e-12);
    }
  }
  CHECK(flagged == 2);
}

TEST_CASE("the misprint catalogue lists exactly the two parked-state cells") {
  const auto& list = known_trace_discrepancies();
  REQUIRE(list.size() == 2);
  CHECK(list[0].input == "100");
  CHECK(list[0].step == 4);
  CHECK(list[0].printed == "-i|020>|0>");
  CHECK(list[0].resolved == "-1|020>|0>");
  CHECK(list[1].input == "101");
  CHECK(list[1].printed == "-i|021>|0>");
  CHECK(list[1].resolved == "-1|021>|0>");
}

TEST_CASE("the dense oracle confirms the corrected parked-state sign") {
  // Independent route: multiply the per-step exponentials for the first
  // four steps and read off where |100>|0> lands.
  Schedule partial = reference_schedule();
  partial.steps.resize(4);
  const Eigen::MatrixXcd u = oracle::compose_schedule_dense(partial, 3);
  const Eigen::VectorXcd in = ket("100", 0, 3).amplitudes();
  const Eigen::VectorXcd out = u * in;
  const Eigen::VectorXcd fixed = -ket("020", 0, 3).amplitudes();
  const Eigen::VectorXcd printed =
      complexd(0.0, -1.0) * ket("020", 0, 3).amplitudes();
  CHECK((out - fixed).norm() < 1e-9);
  CHECK((out - printed).norm() > 1.0);
}

TEST_CASE("per-input traces: |111> and the quiet rows match as printed") {
  const Schedule s = reference_schedule();

  const TraceComparison full =
      check_reference_trace(run_schedule(ket("111", 0, 3), s));
  CHECK(full.cells.size() == 7);
  CHECK(full.mismatches == 0);
  CHECK(full.discrepancies_confirmed == 0);
  for (const TraceCell& cell : full.cells) CHECK(cell.matches);
  CHECK(full.cells[2].expected == "-i|011>|1>");
  CHECK(full.cells[6].expected == "-1|111>|0>");

  const TraceComparison quiet =
      check_reference_trace(run_schedule(ket("011", 0, 3), s));
  CHECK(quiet.mismatches == 0);
  for (const TraceCell& cell : quiet.cells) {
    CHECK(cell.expected == "+1|011>|0>");
    CHECK(cell.matches);
  }
}

TEST_CASE("trace comparison validates its trajectory") {
  const Schedule s = reference_schedule();

  const Schedule two = build_cphase_schedule(2, {7.5e9, 7.5e9}, kRabi, 0.0);
  CHECK_THROWS_AS(
      check_reference_trace(run_schedule(ket("11", 0, 3), two)),
      std::invalid_argument);

  Schedule partial = s;
  partial.steps.resize(3);
  CHECK_THROWS_AS(
      check_reference_trace(run_schedule(ket("100", 0, 3), partial)),
      std::invalid_argument);

  // Superposition inputs are not rows of the reference table.
  const SystemState super = apply_hadamard(ket("000", 0, 3), 1);
  CHECK_THROWS_AS(check_reference_trace(run_schedule(super, s)),
                  std::invalid_argument);

  CHECK_THROWS_AS(check_reference_trace(run_schedule(ket("200", 0, 3), s)),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_reference_trace(run_schedule(ket("000", 1, 3), s)),
                  std::invalid_argument);

  CHECK_THROWS_AS(check_reference_trace_all(two), std::invalid_argument);
}

TEST_CASE("trace CSV carries one line per cell plus the header") {
  const TraceComparison cmp = check_reference_trace_all(reference_schedule());
  std::ostringstream os;
  write_trace_csv(cmp, os);
  const std::string csv = os.str();

  size_t lines = 0;
  for (char c : csv) lines += (c == '\n');
  CHECK(lines == 57);
  CHECK(csv.rfind("input,step,expected,simulated,abs_delta\n", 0) == 0);
  CHECK(csv.find("100,4,-i|020>|0>,-1|020>|0>,1.41421") != std::string::npos);
  CHECK(csv.find("111,7,-1|111>|0>,-1|111>|0>,") != std::string::npos);
}

TEST_CASE("vacuum return distinguishes finished from interrupted protocols") {
  const Schedule s = reference_schedule();
  CHECK(vacuum_return(run_schedule(ket("111", 0, 3), s)) < 1e-12);
  CHECK(vacuum_return(run_schedule(ket("101", 0, 3), s)) < 1e-12);

  Schedule partial = s;
  partial.steps.resize(3);
  CHECK(vacuum_return(run_schedule(ket("110", 0, 3), partial)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}
