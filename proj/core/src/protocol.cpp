#include "squidgate/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "squidgate/verify.hpp"

namespace squidgate {

namespace {

constexpr double kPi = std::numbers::pi;

void check_schedule_inputs(int n, const std::vector<double>& couplings,
                           double rabi) {
  if (n < 2) {
    throw std::invalid_argument("gate schedules need n >= 2 SQUIDs, got " +
                                std::to_string(n));
  }
  if (static_cast<int>(couplings.size()) != n) {
    throw std::invalid_argument("expected " + std::to_string(n) +
                                " couplings, got " +
                                std::to_string(couplings.size()));
  }
  for (double g : couplings) {
    if (g <= 0.0) throw std::invalid_argument("couplings must be positive");
  }
  if (rabi <= 0.0) throw std::invalid_argument("Rabi rate must be positive");
}

std::string step_label(const ScheduleStep& step, int index) {
  return "step " + std::to_string(index + 1) + " (" +
         step_kind_name(step.kind) + " on SQUID " + std::to_string(step.squid) +
         ")";
}

}  // namespace

const char* step_kind_name(StepKind kind) {
  switch (kind) {
    case StepKind::MicrowavePi: return "microwave_pi";
    case StepKind::JCHalf: return "jc_half";
    case StepKind::JCFull: return "jc_full";
    case StepKind::Hadamard: return "hadamard";
  }
  return "?";
}

double Schedule::total_time() const {
  double t = 0.0;
  for (const ScheduleStep& step : steps) t += step.duration;
  return t + 2.0 * retune_time * static_cast<double>(steps.size());
}

Schedule build_cphase_schedule(int n, const std::vector<double>& couplings,
                               double rabi, double retune_time) {
  check_schedule_inputs(n, couplings, rabi);
  if (retune_time < 0.0) throw std::invalid_argument("retune time must be >= 0");

  Schedule s;
  s.n = n;
  s.couplings = couplings;
  s.rabi = rabi;
  s.retune_time = retune_time;
  s.steps.reserve(2 * n + 1);

  // Move |1>_1 to the auxiliary level; the -pi/2 drive phase makes the
  // pulse act as |1> -> |2>, |2> -> -|1>.
  s.steps.push_back({StepKind::MicrowavePi, 1, kPi / rabi, -kPi / 2.0});
  for (int l = 1; l < n; ++l) {
    s.steps.push_back({StepKind::JCHalf, l, kPi / (2.0 * couplings[l - 1]), 0.0});
  }
  s.steps.push_back({StepKind::JCFull, n, kPi / couplings[n - 1], 0.0});
  for (int l = n - 1; l >= 1; --l) {
    s.steps.push_back({StepKind::JCHalf, l, kPi / (2.0 * couplings[l - 1]), 0.0});
  }
  s.steps.push_back({StepKind::MicrowavePi, 1, kPi / rabi, kPi / 2.0});
  return s;
}

Schedule build_cnot_schedule(int n, const std::vector<double>& couplings,
                             double rabi, double retune_time,
                             double hadamard_duration) {
  Schedule s = build_cphase_schedule(n, couplings, rabi, retune_time);
  if (hadamard_duration < 0.0) {
    throw std::invalid_argument("Hadamard duration must be >= 0");
  }
  s.steps.insert(s.steps.begin(),
                 {StepKind::Hadamard, n, hadamard_duration, 0.0});
  s.steps.push_back({StepKind::Hadamard, n, hadamard_duration, 0.0});
  return s;
}

SystemState apply_hadamard(const SystemState& state, int squid) {
  if (squid < 1 || squid > state.n_qubits()) {
    throw std::invalid_argument("SQUID index " + std::to_string(squid) +
                                " outside 1.." + std::to_string(state.n_qubits()));
  }
  int stride = state.n_max() + 1;
  for (int l = state.n_qubits(); l > squid; --l) stride *= 3;

  const double r = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd amps = state.amplitudes();
  for (int k = 0; k < state.dim(); ++k) {
    if ((k / stride) % 3 != 0) continue;
    const int p = k + stride;  // |1>_l partner
    const std::complex<double> a0 = state.amplitudes()[k];
    const std::complex<double> a1 = state.amplitudes()[p];
    amps[k] = r * (a0 + a1);
    amps[p] = r * (a0 - a1);
  }
  return SystemState(state.n_qubits(), state.n_max(), std::move(amps));
}

Trajectory run_schedule(const SystemState& input, const Schedule& schedule) {
  if (input.n_qubits() != schedule.n) {
    throw std::invalid_argument("state has " + std::to_string(input.n_qubits()) +
                                " SQUIDs, schedule expects " +
                                std::to_string(schedule.n));
  }
  if (static_cast<int>(schedule.couplings.size()) != schedule.n) {
    throw std::invalid_argument("schedule carries " +
                                std::to_string(schedule.couplings.size()) +
                                " couplings for n = " + std::to_string(schedule.n));
  }

  Trajectory traj{input, {}};
  traj.after_step.reserve(schedule.steps.size());
  SystemState state = input;
  for (size_t i = 0; i < schedule.steps.size(); ++i) {
    const ScheduleStep& step = schedule.steps[i];
    try {
      switch (step.kind) {
        case StepKind::MicrowavePi:
          state = drive_evolve(
              state, {step.squid, schedule.rabi, step.phase, step.duration});
          break;
        case StepKind::JCHalf:
        case StepKind::JCFull:
          state = jc_evolve(state, {step.squid,
                                    schedule.couplings[step.squid - 1],
                                    step.duration});
          break;
        case StepKind::Hadamard:
          state = apply_hadamard(state, step.squid);
          break;
      }
    } catch (const TruncationError& err) {
      throw TruncationError(step_label(step, static_cast<int>(i)) + ": " +
                            err.what());
    }
    traj.after_step.push_back(state);
  }
  if (traj.after_step.empty()) {
    throw std::invalid_argument("schedule has no steps");
  }
  return traj;
}

GateReport extract_gate(const Schedule& schedule, int n_max) {
  const int n = schedule.n;
  const int dim = 1 << n;

  GateReport report;
  report.n = n;
  report.gate = Eigen::MatrixXcd::Zero(dim, dim);
  report.step_count = static_cast<int>(schedule.steps.size());
  report.total_time = schedule.total_time();
  report.vacuum_return = 0.0;

  for (int in = 0; in < dim; ++in) {
    BasisLabel label;
    label.levels.resize(n);
    for (int l = 0; l < n; ++l) {
      const int bit = (in >> (n - 1 - l)) & 1;  // qubit 1 = most significant
      label.levels[l] = bit ? SquidLevel::L1 : SquidLevel::L0;
    }
    label.photon = 0;

    const Trajectory traj = run_schedule(basis_state(label, n_max), schedule);
    const SystemState& out = traj.final_state();

    for (int j = 0; j < dim; ++j) {
      BasisLabel out_label;
      out_label.levels.resize(n);
      for (int l = 0; l < n; ++l) {
        const int bit = (j >> (n - 1 - l)) & 1;
        out_label.levels[l] = bit ? SquidLevel::L1 : SquidLevel::L0;
      }
      out_label.photon = 0;
      report.gate(j, in) = out.amplitude(out_label);
    }
    report.vacuum_return =
        std::max(report.vacuum_return, photon_population(out, 1));
  }

  report.fidelity = gate_fidelity(report.gate, cphase_target(n));
  return report;
}

StepCountComparison step_count_comparison(int n) {
  if (n < 3) {
    throw std::invalid_argument(
        "step count comparison needs n >= 3 (the conventional decomposition "
        "is tabulated for three qubits)");
  }
  StepCountComparison c;
  c.phase_steps = 2 * n + 1;
  c.cnot_steps = 2 * n + 3;
  if (n == 3) c.conventional_steps = 28;
  return c;
}

}  // namespace squidgate
