#include "squidgate/serialize.hpp"

#include <numbers>
#include <set>
#include <string>

#include "squidgate/units.hpp"

namespace squidgate {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::string& context,
                         const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (allowed.find(item.key()) == allowed.end()) {
      throw ConfigError("unknown key '" + item.key() + "' in " + context);
    }
  }
}

json complex_to_json(const std::complex<double>& z) {
  return json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("amplitudes must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json quantity_to_json(const Quantity& q) {
  return json{{"value", q.value}, {"unit", q.unit}, {"formula", q.formula}};
}

StepKind step_kind_from_name(const std::string& name) {
  if (name == "microwave_pi") return StepKind::MicrowavePi;
  if (name == "jc_half") return StepKind::JCHalf;
  if (name == "jc_full") return StepKind::JCFull;
  if (name == "hadamard") return StepKind::Hadamard;
  throw ConfigError("unknown schedule step kind '" + name + "'");
}

}  // namespace

json state_to_json(const SystemState& state) {
  json amps = json::array();
  for (int k = 0; k < state.dim(); ++k) {
    amps.push_back(complex_to_json(state.amplitudes()[k]));
  }
  return json{{"n", state.n_qubits()},
              {"n_max", state.n_max()},
              {"amplitudes", std::move(amps)}};
}

SystemState state_from_json(const json& j) {
  reject_unknown_keys(j, "state", {"n", "n_max", "amplitudes"});
  if (!j.contains("n") || !j.contains("n_max") || !j.contains("amplitudes")) {
    throw ConfigError("state needs keys n, n_max, amplitudes");
  }
  const int n = j["n"].get<int>();
  const int n_max = j["n_max"].get<int>();
  const json& amps = j["amplitudes"];
  Eigen::VectorXcd v(amps.size());
  for (size_t k = 0; k < amps.size(); ++k) v[k] = complex_from_json(amps[k]);
  return SystemState(n, n_max, std::move(v));
}

json schedule_to_json(const Schedule& schedule) {
  json steps = json::array();
  for (const ScheduleStep& step : schedule.steps) {
    steps.push_back(json{{"kind", step_kind_name(step.kind)},
                         {"squid", step.squid},
                         {"duration_s", step.duration},
                         {"phase_rad", step.phase}});
  }
  return json{{"n", schedule.n},
              {"steps", std::move(steps)},
              {"couplings", schedule.couplings},
              {"total_time_s", schedule.total_time()}};
}

Schedule schedule_from_json(const json& j) {
  reject_unknown_keys(j, "schedule", {"n", "steps", "couplings", "total_time_s"});
  for (const char* key : {"n", "steps", "couplings", "total_time_s"}) {
    if (!j.contains(key)) {
      throw ConfigError(std::string("schedule needs key '") + key + "'");
    }
  }

  Schedule s;
  s.n = j["n"].get<int>();
  s.couplings = j["couplings"].get<std::vector<double>>();
  double pulse_time = 0.0;
  for (const json& step_json : j["steps"]) {
    reject_unknown_keys(step_json, "schedule step",
                        {"kind", "squid", "duration_s", "phase_rad"});
    ScheduleStep step;
    step.kind = step_kind_from_name(step_json.at("kind").get<std::string>());
    step.squid = step_json.at("squid").get<int>();
    step.duration = step_json.at("duration_s").get<double>();
    step.phase = step_json.at("phase_rad").get<double>();
    pulse_time += step.duration;
    if (step.kind == StepKind::MicrowavePi && s.rabi == 0.0 &&
        step.duration > 0.0) {
      s.rabi = std::numbers::pi / step.duration;  // pi pulse
    }
    s.steps.push_back(step);
  }
  if (s.rabi == 0.0) s.rabi = 1.0;  // no microwave steps; value unused
  if (!s.steps.empty()) {
    const double gaps = j["total_time_s"].get<double>() - pulse_time;
    s.retune_time = std::max(0.0, gaps / (2.0 * s.steps.size()));
  }
  return s;
}

json gate_report_to_json(const GateReport& report) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < report.gate.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j2 = 0; j2 < report.gate.cols(); ++j2) {
      row.push_back(complex_to_json(report.gate(i, j2)));
    }
    rows.push_back(std::move(row));
  }
  return json{{"n", report.n},
              {"gate", std::move(rows)},
              {"fidelity", report.fidelity},
              {"vacuum_return", report.vacuum_return},
              {"step_count", report.step_count},
              {"total_time_s", report.total_time}};
}

json spectrum_to_json(const SpectrumResult& result) {
  json out{
      {"energies_J", result.energies},
      {"nu_Hz",
       {{"nu01", result.nu01}, {"nu02", result.nu02}, {"nu12", result.nu12}}},
      {"phi",
       {{"phi01", result.phi01},
        {"phi02", result.phi02},
        {"phi12", result.phi12}}},
      {"grid",
       {{"points", result.grid.points},
        {"lo_Wb", result.grid.lo},
        {"hi_Wb", result.grid.hi},
        {"spacing_Wb", result.grid.spacing}}},
      {"convergence",
       {{"nu02_coarse_Hz", result.convergence.nu02_coarse},
        {"nu02_fine_Hz", result.convergence.nu02_fine},
        {"nu02_richardson_Hz", result.convergence.nu02_richardson},
        {"relative_delta", result.convergence.relative_delta}}},
      {"lambda_check", lambda_check(result)},
  };
  if (result.harmonic) {
    out["harmonic"] = {
        {"analytic_nu_Hz", result.harmonic->analytic_nu},
        {"max_relative_deviation", result.harmonic->max_relative_deviation}};
  }
  return out;
}

json feasibility_to_json(const FeasibilityReport& report) {
  json g = json::array();
  for (const Quantity& q : report.g) g.push_back(quantity_to_json(q));
  json g_alt = json::array();
  for (const Quantity& q : report.g_alternate) g_alt.push_back(quantity_to_json(q));
  json tau_r = json::array();
  for (const Quantity& q : report.tau_r) tau_r.push_back(quantity_to_json(q));

  return json{
      {"g", std::move(g)},
      {"g_alternate", std::move(g_alt)},
      {"tau",
       {{"tau_r", std::move(tau_r)},
        {"tau_total", quantity_to_json(report.tau_total)},
        {"margin_gamma2", quantity_to_json(report.margin_gamma2)},
        {"margin_kappa", quantity_to_json(report.margin_kappa)}}},
      {"kappa_inv", quantity_to_json(report.kappa_inv)},
      {"rabi", quantity_to_json(report.rabi)},
      {"microwave_time", quantity_to_json(report.microwave_time)},
      {"flux_amplitude", quantity_to_json(report.flux_amplitude)},
      {"zeta", quantity_to_json(report.zeta_value)},
      {"verdict", report.pass ? "pass" : "fail"},
      {"failures", report.failures},
      {"thresholds",
       {{"zeta", report.zeta_threshold}, {"margin", report.margin_threshold}}},
      {"convention_flags",
       {{"photon_energy", convention_name(report.convention)},
        {"alternate_convention_printed", true}}},
  };
}

json conventions_json(PhotonEnergyConvention convention) {
  return json{
      {"photon_energy", convention_name(convention)},
      {"rates", "all rates angular (rad/s)"},
      {"step_counting",
       "the target's pi window counts as one step; 2n+1 steps for the phase "
       "gate, 2n+3 with the Hadamard pair"},
      {"hadamard", "ideal unitary on the {|0>,|1>} subspace of the target"},
      {"basis_order", "SQUID 1 most significant, photon index fastest"},
  };
}

}  // namespace squidgate
