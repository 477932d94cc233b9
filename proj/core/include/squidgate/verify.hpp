#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "squidgate/protocol.hpp"

namespace squidgate {

/// diag(1, ..., 1, -1) on n qubits.
Eigen::MatrixXcd cphase_target(int n);

/// Identity except for an X block on the last two rows (target flips when
/// every control is |1>).
Eigen::MatrixXcd cnot_target(int n);

/// |Tr(target^dag actual)| / dim; 1 for equality up to a global phase.
double gate_fidelity(const Eigen::MatrixXcd& actual,
                     const Eigen::MatrixXcd& target);

struct TruthTableCheck {
  bool pass = false;
  double max_error = 0.0;  // worst entry after global-phase alignment
};

/// Compares the extracted gate entrywise against diag(1,...,1,-1) after
/// dividing out the phase of the largest-magnitude entry (first maximum;
/// well conditioned for near-diagonal gates).
TruthTableCheck check_truth_table(const GateReport& report, int n,
                                  double tol = 1e-10);

struct TraceCell {
  std::string input;       // computational bits, e.g. "100"
  int step = 0;            // 1-based schedule step
  std::string expected;    // reference cell, e.g. "-i|000>|1>"
  std::string simulated;   // dominant component of the simulated state
  double delta = 0.0;      // l2 distance between simulated state and cell
  bool matches = false;
  bool known_discrepancy = false;  // reference cell known to be a misprint
  std::string resolved;            // corrected cell for misprinted entries
  double resolved_delta = std::numeric_limits<double>::quiet_NaN();
};

struct TraceComparison {
  std::vector<TraceCell> cells;
  int mismatches = 0;               // cells matching neither form
  int discrepancies_confirmed = 0;  // misprinted cells matching the fix

  bool pass() const { return mismatches == 0; }
};

struct KnownTraceDiscrepancy {
  std::string input;
  int step = 0;
  std::string printed;
  std::string resolved;
};

/// The reference table is transcribed verbatim; these cells are internally
/// inconsistent with its own neighbouring columns (a -i where the forward
/// rules give -1) and are checked against the corrected value instead.
const std::vector<KnownTraceDiscrepancy>& known_trace_discrepancies();

/// Checks one three-qubit trajectory of the 7-step controlled phase
/// schedule against the stage-by-stage reference table, cell by cell. The
/// input is identified from the trajectory's initial state.
TraceComparison check_reference_trace(const Trajectory& trajectory,
                                      double tol = 1e-12);

/// Runs all 8 computational-basis inputs through the schedule and
/// concatenates the per-input comparisons (56 cells).
TraceComparison check_reference_trace_all(const Schedule& schedule,
                                          int n_max = 3, double tol = 1e-12);

/// Columns: input,step,expected,simulated,abs_delta.
void write_trace_csv(const TraceComparison& comparison, std::ostream& out);

/// Photon population left outside vacuum at the end of the trajectory.
double vacuum_return(const Trajectory& trajectory);

}  // namespace squidgate
