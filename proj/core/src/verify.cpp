#include "squidgate/verify.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace squidgate {

namespace {

using complexd = std::complex<double>;

struct TraceEntry {
  const char* input;   // computational bits of the initial state
  int step;            // 1-based
  const char* levels;  // SQUID levels after the step
  int photon;
  complexd phase;
};

constexpr complexd kOne{1.0, 0.0};
constexpr complexd kMinusOne{-1.0, 0.0};
constexpr complexd kI{0.0, 1.0};
constexpr complexd kMinusI{0.0, -1.0};

// Stage-by-stage states of the three-qubit controlled phase schedule for
// the inputs with SQUID 1 in |1>, transcribed from the reference table.
// Inputs with SQUID 1 in |0> are untouched at every step.
const TraceEntry kReferenceTrace[] = {
    {"100", 1, "200", 0, kOne},    {"100", 2, "000", 1, kMinusI},
    {"100", 3, "020", 0, kMinusOne}, {"100", 4, "020", 0, kMinusI},
    {"100", 5, "000", 1, kI},      {"100", 6, "200", 0, kOne},
    {"100", 7, "100", 0, kOne},

    {"101", 1, "201", 0, kOne},    {"101", 2, "001", 1, kMinusI},
    {"101", 3, "021", 0, kMinusOne}, {"101", 4, "021", 0, kMinusI},
    {"101", 5, "001", 1, kI},      {"101", 6, "201", 0, kOne},
    {"101", 7, "101", 0, kOne},

    {"110", 1, "210", 0, kOne},    {"110", 2, "010", 1, kMinusI},
    {"110", 3, "010", 1, kMinusI}, {"110", 4, "010", 1, kI},
    {"110", 5, "010", 1, kI},      {"110", 6, "210", 0, kOne},
    {"110", 7, "110", 0, kOne},

    {"111", 1, "211", 0, kOne},    {"111", 2, "011", 1, kMinusI},
    {"111", 3, "011", 1, kMinusI}, {"111", 4, "011", 1, kMinusI},
    {"111", 5, "011", 1, kMinusI}, {"111", 6, "211", 0, kMinusOne},
    {"111", 7, "111", 0, kMinusOne},
};

// A SQUID in |1> is a JC spectator, so the target's pi window (step 4)
// cannot change the parked -|020> / -|021> states; the -i there disagrees
// with the table's own steps 3 and 5. The forward rules give -1.
struct ResolvedCell {
  const char* input;
  int step;
  complexd phase;  // levels and photon are those of the printed cell
};
const ResolvedCell kResolvedCells[] = {
    {"100", 4, kMinusOne},
    {"101", 4, kMinusOne},
};

std::string format_phase(complexd phase) {
  const struct { complexd value; const char* text; } named[] = {
      {kOne, "+1"}, {kMinusOne, "-1"}, {kI, "+i"}, {kMinusI, "-i"}};
  for (const auto& n : named) {
    if (std::abs(phase - n.value) < 1e-9) return n.text;
  }
  std::ostringstream os;
  os << "(" << phase.real() << (phase.imag() < 0 ? "" : "+") << phase.imag()
     << "i)";
  return os.str();
}

std::string format_cell(complexd phase, const std::string& levels, int photon) {
  return format_phase(phase) + "|" + levels + ">|" + std::to_string(photon) +
         ">";
}

BasisLabel label_from_levels(const std::string& levels, int photon) {
  BasisLabel label;
  label.photon = photon;
  label.levels.reserve(levels.size());
  for (char c : levels) {
    label.levels.push_back(static_cast<SquidLevel>(c - '0'));
  }
  return label;
}

std::string format_dominant(const SystemState& state) {
  int best = 0;
  double best_mag = 0.0;
  for (int k = 0; k < state.dim(); ++k) {
    const double mag = std::abs(state.amplitudes()[k]);
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
    }
  }
  const BasisLabel label = basis_label(best, state.n_qubits(), state.n_max());
  std::string levels;
  for (SquidLevel l : label.levels) {
    levels.push_back(static_cast<char>('0' + static_cast<int>(l)));
  }
  return format_cell(state.amplitudes()[best], levels, label.photon);
}

std::string identify_basis_input(const SystemState& state) {
  int best = 0;
  double best_mag = 0.0;
  for (int k = 0; k < state.dim(); ++k) {
    const double mag = std::abs(state.amplitudes()[k]);
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
    }
  }
  if (std::abs(state.amplitudes()[best] - kOne) > 1e-9) {
    throw std::invalid_argument(
        "trace comparison expects a computational-basis input with unit "
        "amplitude");
  }
  const BasisLabel label = basis_label(best, state.n_qubits(), state.n_max());
  if (label.photon != 0) {
    throw std::invalid_argument("trace comparison expects a vacuum resonator");
  }
  std::string bits;
  for (SquidLevel l : label.levels) {
    if (l == SquidLevel::L2) {
      throw std::invalid_argument(
          "trace comparison expects qubit levels {0,1} only");
    }
    bits.push_back(l == SquidLevel::L1 ? '1' : '0');
  }
  return bits;
}

}  // namespace

Eigen::MatrixXcd cphase_target(int n) {
  if (n < 1) throw std::invalid_argument("target gate needs n >= 1");
  const int dim = 1 << n;
  Eigen::MatrixXcd target = Eigen::MatrixXcd::Identity(dim, dim);
  target(dim - 1, dim - 1) = -1.0;
  return target;
}

Eigen::MatrixXcd cnot_target(int n) {
  if (n < 2) throw std::invalid_argument("controlled NOT needs n >= 2");
  const int dim = 1 << n;
  Eigen::MatrixXcd target = Eigen::MatrixXcd::Identity(dim, dim);
  target(dim - 2, dim - 2) = 0.0;
  target(dim - 1, dim - 1) = 0.0;
  target(dim - 2, dim - 1) = 1.0;
  target(dim - 1, dim - 2) = 1.0;
  return target;
}

double gate_fidelity(const Eigen::MatrixXcd& actual,
                     const Eigen::MatrixXcd& target) {
  if (actual.rows() != target.rows() || actual.cols() != target.cols() ||
      actual.rows() != actual.cols()) {
    throw std::invalid_argument("gate fidelity needs equal square matrices");
  }
  return std::abs((target.adjoint() * actual).trace()) /
         static_cast<double>(actual.rows());
}

TruthTableCheck check_truth_table(const GateReport& report, int n, double tol) {
  const int dim = 1 << n;
  if (report.gate.rows() != dim || report.gate.cols() != dim) {
    throw std::invalid_argument("gate matrix does not match n");
  }
  // Divide out the phase of the first largest-magnitude entry.
  complexd pivot = kOne;
  double best_mag = 0.0;
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      const double mag = std::abs(report.gate(i, j));
      if (mag > best_mag) {
        best_mag = mag;
        pivot = report.gate(i, j);
      }
    }
  }
  const complexd phase = best_mag > 0.0 ? pivot / best_mag : kOne;

  const Eigen::MatrixXcd target = cphase_target(n);
  TruthTableCheck check;
  check.max_error = ((report.gate / phase) - target).cwiseAbs().maxCoeff();
  check.pass = check.max_error < tol;
  return check;
}

const std::vector<KnownTraceDiscrepancy>& known_trace_discrepancies() {
  static const std::vector<KnownTraceDiscrepancy> list = [] {
    std::vector<KnownTraceDiscrepancy> out;
    for (const ResolvedCell& cell : kResolvedCells) {
      for (const TraceEntry& entry : kReferenceTrace) {
        if (std::string(entry.input) == cell.input && entry.step == cell.step) {
          out.push_back({cell.input, cell.step,
                         format_cell(entry.phase, entry.levels, entry.photon),
                         format_cell(cell.phase, entry.levels, entry.photon)});
        }
      }
    }
    return out;
  }();
  return list;
}

TraceComparison check_reference_trace(const Trajectory& trajectory, double tol) {
  const SystemState& initial = trajectory.initial;
  if (initial.n_qubits() != 3) {
    throw std::invalid_argument("the reference trace is for three SQUIDs");
  }
  if (trajectory.after_step.size() != 7) {
    throw std::invalid_argument(
        "the reference trace covers the 7-step controlled phase schedule, got " +
        std::to_string(trajectory.after_step.size()) + " steps");
  }
  const std::string input = identify_basis_input(initial);

  TraceComparison cmp;
  for (int step = 1; step <= 7; ++step) {
    TraceCell cell;
    cell.input = input;
    cell.step = step;

    // Inputs with SQUID 1 in |0> stay put; the others come from the table.
    std::string levels = input;
    int photon = 0;
    complexd phase = kOne;
    if (input[0] == '1') {
      bool found = false;
      for (const TraceEntry& entry : kReferenceTrace) {
        if (input == entry.input && entry.step == step) {
          levels = entry.levels;
          photon = entry.photon;
          phase = entry.phase;
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("reference trace table is incomplete");
    }

    const SystemState& sim = trajectory.after_step[step - 1];
    const SystemState expected_state =
        basis_state(label_from_levels(levels, photon), initial.n_max());
    cell.expected = format_cell(phase, levels, photon);
    cell.simulated = format_dominant(sim);
    cell.delta =
        (sim.amplitudes() - phase * expected_state.amplitudes()).norm();
    cell.matches = cell.delta <= tol;

    for (const ResolvedCell& fix : kResolvedCells) {
      if (input == fix.input && step == fix.step) {
        cell.known_discrepancy = true;
        cell.resolved = format_cell(fix.phase, levels, photon);
        cell.resolved_delta =
            (sim.amplitudes() - fix.phase * expected_state.amplitudes()).norm();
      }
    }

    if (cell.matches) {
      // fine
    } else if (cell.known_discrepancy && cell.resolved_delta <= tol) {
      ++cmp.discrepancies_confirmed;
    } else {
      ++cmp.mismatches;
    }
    cmp.cells.push_back(std::move(cell));
  }
  return cmp;
}

TraceComparison check_reference_trace_all(const Schedule& schedule, int n_max,
                                          double tol) {
  if (schedule.n != 3 || schedule.steps.size() != 7) {
    throw std::invalid_argument(
        "the reference trace is for the three-qubit 7-step schedule");
  }
  TraceComparison all;
  for (int in = 0; in < 8; ++in) {
    BasisLabel label;
    label.photon = 0;
    for (int l = 2; l >= 0; --l) {
      label.levels.insert(label.levels.begin(),
                          ((in >> (2 - l)) & 1) ? SquidLevel::L1 : SquidLevel::L0);
    }
    const Trajectory traj = run_schedule(basis_state(label, n_max), schedule);
    TraceComparison one = check_reference_trace(traj, tol);
    all.mismatches += one.mismatches;
    all.discrepancies_confirmed += one.discrepancies_confirmed;
    for (TraceCell& cell : one.cells) all.cells.push_back(std::move(cell));
  }
  return all;
}

void write_trace_csv(const TraceComparison& comparison, std::ostream& out) {
  out << "input,step,expected,simulated,abs_delta\n";
  for (const TraceCell& cell : comparison.cells) {
    out << cell.input << "," << cell.step << "," << cell.expected << ","
        << cell.simulated << "," << cell.delta << "\n";
  }
}

double vacuum_return(const Trajectory& trajectory) {
  return photon_population(trajectory.final_state(), 1);
}

}  // namespace squidgate
