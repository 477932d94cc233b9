#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "squidgate/dynamics.hpp"
#include "squidgate/hilbert.hpp"

namespace squidgate {

enum class StepKind {
  MicrowavePi,  // microwave pi pulse on the 1-2 transition
  JCHalf,       // JC window with g t = pi/2
  JCFull,       // JC window with g t = pi
  Hadamard,     // ideal Hadamard on the {|0>,|1>} qubit subspace
};

const char* step_kind_name(StepKind kind);

struct ScheduleStep {
  StepKind kind = StepKind::JCHalf;
  int squid = 1;
  double duration = 0.0;  // s
  double phase = 0.0;     // rad, drive phase (MicrowavePi only)
};

/// Ordered pulse sequence for n SQUIDs sharing one resonator. Couplings
/// g_1..g_n and the common Rabi rate are angular (rad/s); retune_time is
/// the free gap spent moving a SQUID in and out of resonance (identity
/// evolution, two gaps per addressed window).
struct Schedule {
  int n = 0;
  std::vector<ScheduleStep> steps;
  std::vector<double> couplings;
  double rabi = 0.0;
  double retune_time = 0.0;

  double total_time() const;  // pulse durations + 2 retunes per step
};

struct Trajectory {
  SystemState initial;
  std::vector<SystemState> after_step;

  const SystemState& final_state() const { return after_step.back(); }
};

struct GateReport {
  int n = 0;
  Eigen::MatrixXcd gate;   // 2^n x 2^n, computational block
  double fidelity = 0.0;   // |Tr(T^dag G)| / 2^n vs diag(1,...,1,-1)
  double vacuum_return = 0.0;  // worst-case photon population left behind
  int step_count = 0;
  double total_time = 0.0;
};

/// Controlled phase gate on n >= 2 SQUIDs (control qubits 1..n-1, target n):
/// a -pi/2-phase microwave pi pulse on SQUID 1, JC pi/2 windows on SQUIDs
/// 1..n-1, a JC pi window on SQUID n, the reversed JC pi/2 windows, and a
/// closing +pi/2-phase microwave pi pulse. 2n+1 steps.
Schedule build_cphase_schedule(int n, const std::vector<double>& couplings,
                               double rabi, double retune_time);

/// Controlled NOT on target SQUID n: the controlled phase schedule wrapped
/// in Hadamard steps on SQUID n. 2n+3 steps.
Schedule build_cnot_schedule(int n, const std::vector<double>& couplings,
                             double rabi, double retune_time,
                             double hadamard_duration = 0.0);

/// Applies the ideal Hadamard to the {|0>,|1>} subspace of one SQUID;
/// |2>_l amplitudes are untouched.
SystemState apply_hadamard(const SystemState& state, int squid);

/// Runs the schedule on an initial state, recording the state after every
/// step. Retune gaps are identity evolution in the resonant frame and add
/// nothing beyond time. Truncation errors are re-raised with the step that
/// caused them.
Trajectory run_schedule(const SystemState& input, const Schedule& schedule);

/// Runs all 2^n computational-basis inputs (vacuum resonator) and projects
/// the outcomes back onto the computational block. Basis order: qubit 1 is
/// the most significant bit, |0...0> first.
GateReport extract_gate(const Schedule& schedule, int n_max = 3);

struct StepCountComparison {
  int phase_steps = 0;  // 2n+1
  int cnot_steps = 0;   // 2n+3
  std::optional<int> conventional_steps;  // two-qubit-gate decomposition
};

/// Step counts of the n-qubit schedules next to the conventional circuit
/// decomposition. The conventional count is only tabulated for the
/// three-qubit case (28 elementary steps); other n leave it unset.
/// Requires n >= 3.
StepCountComparison step_count_comparison(int n);

}  // namespace squidgate
