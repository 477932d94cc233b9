#include "commands.hpp"

#include <cmath>
#include <complex>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "squidgate/serialize.hpp"
#include "squidgate/units.hpp"
#include "squidgate/verify.hpp"

namespace squidgate::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Timestamp lives in its own block so reports stay byte-comparable after
// dropping "meta".
json meta_json() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return json{{"generated_at", buf}};
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << j.dump(2) << "\n";
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw ConfigError("'" + path + "' is not valid JSON: " + err.what());
  }
}

fs::path ensure_output_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  return dir;
}

Schedule make_schedule(const RunConfig& cfg, const std::string& schedule_path) {
  if (schedule_path.empty()) {
    return build_cphase_schedule(cfg.n, cfg.couplings, cfg.rabi,
                                 cfg.device.tau_a);
  }
  return schedule_from_json(load_json_file(schedule_path));
}

std::string format_amplitude(const std::complex<double>& z) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << "(" << z.real()
     << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
  return os.str();
}

/// Nonzero components of a state in ket form, largest first.
std::string ket_string(const SystemState& state) {
  std::vector<int> order;
  for (int k = 0; k < state.dim(); ++k) {
    if (std::abs(state.amplitudes()[k]) > 1e-9) order.push_back(k);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(state.amplitudes()[a]) > std::abs(state.amplitudes()[b]);
  });
  if (order.empty()) return "0";

  std::ostringstream os;
  int shown = 0;
  for (int k : order) {
    if (shown == 6) {
      os << " + (" << order.size() - shown << " more)";
      break;
    }
    if (shown > 0) os << " + ";
    const BasisLabel label = basis_label(k, state.n_qubits(), state.n_max());
    os << format_amplitude(state.amplitudes()[k]) << "|";
    for (SquidLevel l : label.levels) os << static_cast<int>(l);
    os << ">|" << label.photon << ">";
    ++shown;
  }
  return os.str();
}

BasisLabel parse_input_label(const std::string& input, int n) {
  if (static_cast<int>(input.size()) != n) {
    throw ConfigError("input '" + input + "' must be " + std::to_string(n) +
                      " bits of 0/1, or 'all'");
  }
  BasisLabel label;
  for (char c : input) {
    if (c != '0' && c != '1') {
      throw ConfigError("input '" + input + "' must be " + std::to_string(n) +
                        " bits of 0/1, or 'all'");
    }
    label.levels.push_back(c == '0' ? SquidLevel::L0 : SquidLevel::L1);
  }
  label.photon = 0;
  return label;
}

json trajectory_to_json(const Trajectory& trajectory, const Schedule& schedule,
                        const std::string& input,
                        PhotonEnergyConvention convention) {
  json steps = json::array();
  for (size_t i = 0; i < trajectory.after_step.size(); ++i) {
    const ScheduleStep& step = schedule.steps[i];
    steps.push_back(json{
        {"step", static_cast<int>(i) + 1},
        {"kind", step_kind_name(step.kind)},
        {"squid", step.squid},
        {"state", state_to_json(trajectory.after_step[i])},
    });
  }
  return json{{"input", input},
              {"schedule", schedule_to_json(schedule)},
              {"steps", std::move(steps)},
              {"final_state", state_to_json(trajectory.final_state())},
              {"vacuum_return", vacuum_return(trajectory)},
              {"conventions", conventions_json(convention)}};
}

std::ostream& sci(std::ostream& os) {
  return os << std::scientific << std::setprecision(4);
}

}  // namespace

RunConfig resolve_config(const Overrides& o) {
  RunConfig cfg =
      o.config_path.empty() ? default_config() : load_config(o.config_path);

  if (o.output_dir) cfg.output_dir = *o.output_dir;
  if (o.seed) cfg.seed = *o.seed;
  if (o.n_max) {
    if (*o.n_max < 0) throw ConfigError("--n-max must be >= 0");
    cfg.n_max = *o.n_max;
  }
  if (o.n) {
    if (*o.n < 1) throw ConfigError("--n must be >= 1");
    cfg.n = *o.n;
    cfg.device.n = *o.n;
    if (static_cast<int>(cfg.couplings.size()) > cfg.n) {
      cfg.couplings.resize(cfg.n);
    }
    while (static_cast<int>(cfg.couplings.size()) < cfg.n) {
      cfg.couplings.push_back(cfg.couplings.back());
    }
    if (static_cast<int>(cfg.device.placements.size()) > cfg.n) {
      cfg.device.placements.resize(cfg.n);
    }
  }
  if (o.q) cfg.device.resonator.Q = *o.q;
  if (o.mutual_m) {
    if (*o.mutual_m < 0.0) throw ConfigError("--mutual-m must be >= 0");
    cfg.device.mutual_M = *o.mutual_m;
  }
  if (o.beta_l) {
    if (*o.beta_l < 0.0) throw ConfigError("--beta-l must be >= 0");
    cfg.device.squid.beta_L = *o.beta_l;
  }
  if (o.grid) cfg.spectrum.grid_points = *o.grid;
  if (o.levels) cfg.spectrum.levels = *o.levels;
  return cfg;
}

int cmd_simulate(const RunConfig& cfg, const std::string& input,
                 const std::string& schedule_path) {
  const Schedule schedule = make_schedule(cfg, schedule_path);
  const int n = schedule.n;
  const fs::path out_dir = ensure_output_dir(cfg);

  json schedule_json = schedule_to_json(schedule);
  write_json_file(out_dir / "schedule.json", schedule_json);

  if (input == "all") {
    const GateReport report = extract_gate(schedule, cfg.n_max);
    json j = gate_report_to_json(report);
    j["conventions"] = conventions_json(cfg.device.convention);
    j["meta"] = meta_json();
    write_json_file(out_dir / "gate_report.json", j);

    std::cout << "gate extracted on " << n << " qubits ("
              << report.step_count << " steps, " << sci
              << report.total_time << " s)\n"
              << "  fidelity vs controlled-phase target: "
              << std::setprecision(12) << std::fixed << report.fidelity
              << "\n"
              << "  worst photon population left behind: " << sci
              << report.vacuum_return << "\n"
              << "wrote " << (out_dir / "gate_report.json").string() << "\n";
    return 0;
  }

  const BasisLabel label = parse_input_label(input, n);
  const SystemState initial = basis_state(label, cfg.n_max);
  const Trajectory trajectory = run_schedule(initial, schedule);

  json j = trajectory_to_json(trajectory, schedule, input,
                              cfg.device.convention);
  j["meta"] = meta_json();
  const fs::path path = out_dir / ("trajectory_" + input + ".json");
  write_json_file(path, j);

  std::cout << "|" << input << ">|0>  ->  "
            << ket_string(trajectory.final_state()) << "\n"
            << "photon population left behind: " << sci
            << vacuum_return(trajectory) << "\n"
            << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& schedule_path) {
  const Schedule schedule = make_schedule(cfg, schedule_path);
  const int n = schedule.n;
  const fs::path out_dir = ensure_output_dir(cfg);

  bool all_pass = true;
  json report;

  const GateReport gate = extract_gate(schedule, cfg.n_max);
  const TruthTableCheck truth = check_truth_table(gate, n);
  all_pass = all_pass && truth.pass;
  report["truth_table"] = json{{"pass", truth.pass},
                               {"max_error", truth.max_error},
                               {"fidelity", gate.fidelity}};
  std::cout << "truth table (n = " << n << "): "
            << (truth.pass ? "pass" : "FAIL") << " (max entry error " << sci
            << truth.max_error << ", fidelity " << std::setprecision(12)
            << std::fixed << gate.fidelity << ")\n";

  const bool vacuum_ok = gate.vacuum_return < 1e-12;
  all_pass = all_pass && vacuum_ok;
  report["vacuum_return"] = json{{"pass", vacuum_ok},
                                 {"population", gate.vacuum_return}};
  std::cout << "resonator returned to vacuum: "
            << (vacuum_ok ? "pass" : "FAIL") << " (population " << sci
            << gate.vacuum_return << ")\n";

  if (n == 3) {
    const TraceComparison trace =
        check_reference_trace_all(schedule, cfg.n_max);
    {
      std::ofstream csv(out_dir / "trace_comparison.csv");
      if (!csv) throw ConfigError("cannot write trace_comparison.csv");
      write_trace_csv(trace, csv);
    }
    all_pass = all_pass && trace.pass();

    json discrepancies = json::array();
    for (const TraceCell& cell : trace.cells) {
      if (!cell.known_discrepancy) continue;
      discrepancies.push_back(json{{"input", cell.input},
                                   {"step", cell.step},
                                   {"printed", cell.expected},
                                   {"dynamics", cell.resolved},
                                   {"delta_vs_resolved", cell.resolved_delta}});
    }
    report["reference_trace"] =
        json{{"pass", trace.pass()},
             {"cells", trace.cells.size()},
             {"mismatches", trace.mismatches},
             {"misprints_confirmed", trace.discrepancies_confirmed},
             {"misprinted_cells", discrepancies}};

    std::cout << "reference trace: " << (trace.pass() ? "pass" : "FAIL")
              << " (" << trace.cells.size() << " cells, " << trace.mismatches
              << " mismatches, " << trace.discrepancies_confirmed
              << " misprinted cells matching the corrected sign)\n";
    for (const json& d : discrepancies) {
      std::cout << "  input " << d["input"].get<std::string>() << " step "
                << d["step"] << ": table prints "
                << d["printed"].get<std::string>() << ", dynamics give "
                << d["dynamics"].get<std::string>() << "\n";
    }
    std::cout << "wrote " << (out_dir / "trace_comparison.csv").string()
              << "\n";
  }

  if (schedule_path.empty()) {
    // Gate invariance under coupling rescaling: durations stretch, the
    // unitary stays put.
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> factor(0.5, 2.0);
    const int trials = 3;
    double worst = 0.0;
    bool rescaling_pass = true;
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<double> scaled = cfg.couplings;
      for (double& g : scaled) g *= factor(rng);
      const Schedule rebuilt =
          build_cphase_schedule(n, scaled, cfg.rabi, cfg.device.tau_a);
      const TruthTableCheck check =
          check_truth_table(extract_gate(rebuilt, cfg.n_max), n);
      worst = std::max(worst, check.max_error);
      rescaling_pass = rescaling_pass && check.pass;
    }
    all_pass = all_pass && rescaling_pass;
    report["coupling_rescaling"] = json{{"pass", rescaling_pass},
                                        {"trials", trials},
                                        {"seed", cfg.seed},
                                        {"worst_error", worst}};
    std::cout << "coupling rescaling (" << trials << " trials, seed "
              << cfg.seed << "): " << (rescaling_pass ? "pass" : "FAIL")
              << " (worst entry error " << sci << worst << ")\n";
  }

  report["pass"] = all_pass;
  report["conventions"] = conventions_json(cfg.device.convention);
  report["meta"] = meta_json();
  write_json_file(out_dir / "verify_report.json", report);

  std::cout << "verdict: " << (all_pass ? "pass" : "FAIL") << "\n";
  return all_pass ? 0 : 1;
}

int cmd_spectrum(const RunConfig& cfg) {
  const SpectrumResult result = solve_spectrum(cfg.device.squid, cfg.spectrum);
  const fs::path out_dir = ensure_output_dir(cfg);

  json j = spectrum_to_json(result);
  j["conventions"] = conventions_json(cfg.device.convention);
  j["meta"] = meta_json();
  write_json_file(out_dir / "spectrum.json", j);

  {
    std::ofstream csv(out_dir / "potential.csv");
    if (!csv) throw ConfigError("cannot write potential.csv");
    csv << "phi_Wb,phi_over_phi0,potential_J\n";
    csv << std::setprecision(12);
    for (const auto& [phi, u] : potential_profile(
             cfg.device.squid, result.grid.lo, result.grid.hi, 1001)) {
      csv << phi << "," << phi / constants::phi0 << "," << u << "\n";
    }
  }

  std::cout << sci;
  std::cout << "level spacings: nu01 = " << result.nu01
            << " Hz, nu02 = " << result.nu02 << " Hz, nu12 = " << result.nu12
            << " Hz\n"
            << "flux matrix elements: phi01 = " << result.phi01
            << ", phi02 = " << result.phi02 << ", phi12 = " << result.phi12
            << "\n"
            << "grid: " << result.grid.points
            << " points, relative nu02 shift under h -> h/2: "
            << result.convergence.relative_delta << "\n"
            << "lambda configuration usable: "
            << (lambda_check(result) ? "yes" : "no") << "\n";
  if (result.harmonic) {
    std::cout << "harmonic limit: analytic nu = " << result.harmonic->analytic_nu
              << " Hz, max relative spacing deviation "
              << result.harmonic->max_relative_deviation << "\n";
  }
  std::cout << "wrote " << (out_dir / "spectrum.json").string() << " and "
            << (out_dir / "potential.csv").string() << "\n";
  return 0;
}

int cmd_feasibility(const RunConfig& cfg) {
  const FeasibilityReport report = feasibility_report(cfg.device);
  const fs::path out_dir = ensure_output_dir(cfg);

  json j = feasibility_to_json(report);
  j["conventions"] = conventions_json(cfg.device.convention);
  j["meta"] = meta_json();
  write_json_file(out_dir / "feasibility.json", j);

  std::cout << sci;
  for (size_t l = 0; l < report.g.size(); ++l) {
    std::cout << "g_" << l + 1 << " = " << report.g[l].value << " rad/s ("
              << report.g_alternate[l].value << " rad/s with the alternate "
              << "photon energy convention)\n";
  }
  std::cout << "Omega_12 = " << report.rabi.value
            << " rad/s, microwave pi time = " << report.microwave_time.value
            << " s, flux amplitude = " << report.flux_amplitude.value
            << " Wb\n"
            << "kappa_inv = " << report.kappa_inv.value << " s\n"
            << "tau_total = " << report.tau_total.value
            << " s (margins: gamma2 " << report.margin_gamma2.value
            << ", kappa " << report.margin_kappa.value << ")\n"
            << "zeta = " << report.zeta_value.value << " (threshold "
            << report.zeta_threshold << ")\n"
            << "verdict: " << (report.pass ? "pass" : "FAIL") << "\n";
  for (const std::string& failure : report.failures) {
    std::cout << "  failure: " << failure << "\n";
  }
  std::cout << "wrote " << (out_dir / "feasibility.json").string() << "\n";
  return report.pass ? 0 : 1;
}

int cmd_budget(const RunConfig& cfg) {
  const fs::path out_dir = ensure_output_dir(cfg);
  const double tau_uw = std::numbers::pi / cfg.rabi;
  const BudgetParams params{cfg.device.gamma2_inv,
                            photon_lifetime(cfg.device.resonator),
                            cfg.device.tau_a, tau_uw};
  const TimeBudget budget = time_budget(cfg.n, cfg.couplings, params,
                                        cfg.device.margin_threshold);

  const Schedule phase =
      build_cphase_schedule(cfg.n, cfg.couplings, cfg.rabi, cfg.device.tau_a);
  const Schedule cnot =
      build_cnot_schedule(cfg.n, cfg.couplings, cfg.rabi, cfg.device.tau_a);

  json steps = json{{"phase", phase.steps.size()},
                    {"cnot", cnot.steps.size()},
                    {"conventional", nullptr}};
  if (cfg.n >= 3) {
    const StepCountComparison comparison = step_count_comparison(cfg.n);
    if (comparison.conventional_steps) {
      steps["conventional"] = *comparison.conventional_steps;
    }
  }

  json tau_r = json::array();
  for (double t : budget.tau_r) tau_r.push_back(t);
  json j{{"steps", std::move(steps)},
         {"tau",
          {{"tau_r_s", std::move(tau_r)},
           {"tau_a_s", cfg.device.tau_a},
           {"tau_uw_s", tau_uw},
           {"tau_total_s", budget.tau_total},
           {"margin_gamma2", budget.margin_gamma2},
           {"margin_kappa", budget.margin_kappa}}},
         {"schedule_wall_time_s",
          {{"phase", phase.total_time()}, {"cnot", cnot.total_time()}}},
         {"pass", budget.pass}};
  j["conventions"] = conventions_json(cfg.device.convention);
  j["meta"] = meta_json();
  write_json_file(out_dir / "budget.json", j);

  std::cout << "steps: " << phase.steps.size() << " (controlled phase), "
            << cnot.steps.size() << " (controlled NOT)";
  if (!j["steps"]["conventional"].is_null()) {
    std::cout << ", " << j["steps"]["conventional"]
              << " (conventional two-qubit-gate decomposition)";
  }
  std::cout << "\n" << sci << "tau_total = " << budget.tau_total
            << " s (margins: gamma2 " << budget.margin_gamma2 << ", kappa "
            << budget.margin_kappa << ")\n"
            << "verdict: " << (budget.pass ? "pass" : "FAIL") << "\n"
            << "wrote " << (out_dir / "budget.json").string() << "\n";
  return budget.pass ? 0 : 1;
}

}  // namespace squidgate::cli
