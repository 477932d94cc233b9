#include "squidgate/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "squidgate/units.hpp"

namespace squidgate {

namespace {

using nlohmann::json;

// Mirrors config/table1.json: the reference device parameter set, three
// SQUIDs at consecutive antinodes of a 1.5-wavelength resonator.
const char* kDefaultConfig = R"json({
  "n": 3,
  "n_max": 3,
  "couplings": "from-device",
  "seed": 20240901,
  "output_dir": "out",
  "conventions": {
    "photon_energy": "h_nu"
  },
  "thresholds": {
    "zeta": 1e-3,
    "margin": 0.1
  },
  "device": {
    "squid": {
      "C": "135fF",
      "L": "240pH",
      "beta_L": 1.13,
      "flux_bias_phi0": 0.4991,
      "notes": {
        "R": "20Mohm",
        "S": "200x100 um^2",
        "gamma1_inv": "0.16ms"
      }
    },
    "matrix_elements": {
      "phi_01": 0.006,
      "phi_02": 0.032,
      "phi_12": 0.026
    },
    "resonator": {
      "nu_r": "11.4GHz",
      "lambda": "10.5mm",
      "l": "15.75mm",
      "L0": "0.65pH/um",
      "Q": 3000,
      "geometry": {
        "d": "45um",
        "w": "20um",
        "t": "t >> d",
        "eps_e": "6.3"
      }
    },
    "placements": [
      { "M_sr": "100pH", "x": "2.625mm" },
      { "M_sr": "100pH", "x": "7.875mm" },
      { "M_sr": "100pH", "x": "13.125mm" }
    ],
    "budget": {
      "gamma2_inv": "3.2us",
      "tau_a": "0.21ns",
      "tau_uw": "0.21ns"
    },
    "crosstalk": {
      "M": "0.1aH",
      "D": "5.25mm"
    }
  },
  "spectrum": {
    "grid_points": 2048,
    "halfwidth_phi0": 1.0,
    "levels": 3,
    "convergence_tol": 1e-3
  }
})json";

void reject_unknown(const json& j, const std::string& context,
                    const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(context + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (allowed.find(item.key()) == allowed.end()) {
      throw ConfigError("unknown key '" + item.key() + "' in " + context);
    }
  }
}

const json& require(const json& j, const std::string& key,
                    const std::string& context) {
  if (!j.contains(key)) {
    throw ConfigError(context + " is missing required key '" + key + "'");
  }
  return j[key];
}

// Physical quantities must be unit-suffixed strings.
double qty(const json& j, const std::string& key, Dimension dim,
           const std::string& context) {
  const json& v = require(j, key, context);
  if (!v.is_string()) {
    throw ConfigError(context + "." + key +
                      " must be a unit-suffixed string (e.g. \"240pH\"), got " +
                      v.dump());
  }
  return parse_quantity(v.get<std::string>(), dim);
}

double qty_or(const json& j, const std::string& key, Dimension dim,
              const std::string& context, double fallback) {
  if (!j.contains(key)) return fallback;
  return qty(j, key, dim, context);
}

double num(const json& j, const std::string& key, const std::string& context) {
  const json& v = require(j, key, context);
  if (!v.is_number()) {
    throw ConfigError(context + "." + key +
                      " must be a plain number (dimensionless)");
  }
  return v.get<double>();
}

std::map<std::string, std::string> passthrough(const json& j,
                                               const std::string& key,
                                               const std::string& context) {
  std::map<std::string, std::string> out;
  if (!j.contains(key)) return out;
  const json& block = j[key];
  if (!block.is_object()) throw ConfigError(context + "." + key + " must be an object");
  for (const auto& item : block.items()) {
    if (!item.value().is_string()) {
      throw ConfigError(context + "." + key + "." + item.key() +
                        " is descriptive and must be a string");
    }
    out[item.key()] = item.value().get<std::string>();
  }
  return out;
}

}  // namespace

const json& default_config_json() {
  static const json j = json::parse(kDefaultConfig);
  return j;
}

RunConfig default_config() { return parse_config(default_config_json()); }

RunConfig parse_config(const json& j) {
  reject_unknown(j, "config",
                 {"n", "n_max", "couplings", "rabi", "seed", "output_dir",
                  "conventions", "thresholds", "device", "spectrum"});

  RunConfig cfg;
  if (j.contains("n")) cfg.n = j["n"].get<int>();
  if (cfg.n < 1) throw ConfigError("config.n must be >= 1");
  if (j.contains("n_max")) cfg.n_max = j["n_max"].get<int>();
  if (cfg.n_max < 0) throw ConfigError("config.n_max must be >= 0");
  if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long>();
  if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();

  PhotonEnergyConvention convention = PhotonEnergyConvention::HNu;
  if (j.contains("conventions")) {
    const json& conv = j["conventions"];
    reject_unknown(conv, "config.conventions", {"photon_energy"});
    if (conv.contains("photon_energy")) {
      const std::string name = conv["photon_energy"].get<std::string>();
      if (name == "h_nu") {
        convention = PhotonEnergyConvention::HNu;
      } else if (name == "hbar_nu") {
        convention = PhotonEnergyConvention::HbarNu;
      } else {
        throw ConfigError("conventions.photon_energy must be h_nu or hbar_nu");
      }
    }
  }

  double zeta_threshold = 1e-3, margin_threshold = 1e-1;
  if (j.contains("thresholds")) {
    const json& thr = j["thresholds"];
    reject_unknown(thr, "config.thresholds", {"zeta", "margin"});
    if (thr.contains("zeta")) zeta_threshold = num(thr, "zeta", "thresholds");
    if (thr.contains("margin")) margin_threshold = num(thr, "margin", "thresholds");
    if (zeta_threshold <= 0.0 || margin_threshold <= 0.0) {
      throw ConfigError("thresholds must be positive");
    }
  }

  if (j.contains("spectrum")) {
    const json& sp = j["spectrum"];
    reject_unknown(sp, "config.spectrum",
                   {"grid_points", "halfwidth_phi0", "levels", "convergence_tol"});
    if (sp.contains("grid_points")) cfg.spectrum.grid_points = sp["grid_points"].get<int>();
    if (sp.contains("halfwidth_phi0")) cfg.spectrum.halfwidth = num(sp, "halfwidth_phi0", "spectrum");
    if (sp.contains("levels")) cfg.spectrum.levels = sp["levels"].get<int>();
    if (sp.contains("convergence_tol")) cfg.spectrum.convergence_tol = num(sp, "convergence_tol", "spectrum");
  }

  const json& device = require(j, "device", "config");
  reject_unknown(device, "config.device",
                 {"squid", "matrix_elements", "resonator", "placements",
                  "budget", "crosstalk"});

  const json& squid = require(device, "squid", "config.device");
  reject_unknown(squid, "device.squid",
                 {"C", "L", "beta_L", "flux_bias_phi0", "notes"});
  SquidParams sq;
  sq.capacitance = qty(squid, "C", Dimension::Capacitance, "device.squid");
  sq.inductance = qty(squid, "L", Dimension::Inductance, "device.squid");
  sq.beta_L = num(squid, "beta_L", "device.squid");
  sq.flux_bias = num(squid, "flux_bias_phi0", "device.squid") * constants::phi0;
  passthrough(squid, "notes", "device.squid");

  const json& res_json = require(device, "resonator", "config.device");
  reject_unknown(res_json, "device.resonator",
                 {"nu_r", "lambda", "l", "L0", "Q", "geometry"});
  ResonatorParams res;
  res.nu_r = qty(res_json, "nu_r", Dimension::Frequency, "device.resonator");
  res.lambda = qty(res_json, "lambda", Dimension::Length, "device.resonator");
  res.length = qty(res_json, "l", Dimension::Length, "device.resonator");
  res.L0 = qty(res_json, "L0", Dimension::InductancePerLength, "device.resonator");
  res.Q = num(res_json, "Q", "device.resonator");
  res.geometry = passthrough(res_json, "geometry", "device.resonator");

  // Flux matrix elements: tabulated values or solved from the SQUID
  // potential on demand.
  double phi_01 = 0.0, phi_02 = 0.0, phi_12 = 0.0;
  const json& mat = require(device, "matrix_elements", "config.device");
  if (mat.is_string()) {
    if (mat.get<std::string>() != "from-spectrum") {
      throw ConfigError("device.matrix_elements must be an object or \"from-spectrum\"");
    }
    const SpectrumResult solved = solve_spectrum(sq, cfg.spectrum);
    phi_01 = std::abs(solved.phi01);
    phi_02 = std::abs(solved.phi02);
    phi_12 = std::abs(solved.phi12);
  } else {
    reject_unknown(mat, "device.matrix_elements", {"phi_01", "phi_02", "phi_12"});
    phi_01 = num(mat, "phi_01", "device.matrix_elements");
    phi_02 = num(mat, "phi_02", "device.matrix_elements");
    phi_12 = num(mat, "phi_12", "device.matrix_elements");
  }
  if (phi_01 <= 0.0 || phi_02 <= 0.0 || phi_12 <= 0.0) {
    throw ConfigError("matrix elements must be positive");
  }

  const json& placements = require(device, "placements", "config.device");
  if (!placements.is_array() || static_cast<int>(placements.size()) != cfg.n) {
    throw ConfigError("device.placements must list exactly n = " +
                      std::to_string(cfg.n) + " entries");
  }
  std::vector<CouplingPlacement> places;
  for (const json& p : placements) {
    reject_unknown(p, "device.placements[]", {"M_sr", "x"});
    CouplingPlacement place;
    place.M_sr = qty(p, "M_sr", Dimension::Inductance, "device.placements[]");
    place.x = qty(p, "x", Dimension::Length, "device.placements[]");
    place.phi_02 = phi_02;
    places.push_back(place);
  }

  const json& budget = require(device, "budget", "config.device");
  reject_unknown(budget, "device.budget",
                 {"gamma2_inv", "tau_a", "tau_uw", "flux_amplitude"});
  const double gamma2_inv = qty(budget, "gamma2_inv", Dimension::Time, "device.budget");
  const double tau_a = qty(budget, "tau_a", Dimension::Time, "device.budget");
  const double tau_uw = qty_or(budget, "tau_uw", Dimension::Time, "device.budget", 0.0);
  const double flux_amp = qty_or(budget, "flux_amplitude", Dimension::Flux, "device.budget", 0.0);

  const json& cross = require(device, "crosstalk", "config.device");
  reject_unknown(cross, "device.crosstalk", {"M", "D"});
  const double mutual = qty(cross, "M", Dimension::Inductance, "device.crosstalk");
  const double distance = qty_or(cross, "D", Dimension::Length, "device.crosstalk", 0.0);

  cfg.device.n = cfg.n;
  cfg.device.squid = sq;
  cfg.device.resonator = res;
  cfg.device.placements = places;
  cfg.device.phi_01 = phi_01;
  cfg.device.phi_12 = phi_12;
  cfg.device.flux_amplitude = flux_amp;
  cfg.device.tau_uw_target = tau_uw;
  cfg.device.gamma2_inv = gamma2_inv;
  cfg.device.tau_a = tau_a;
  cfg.device.mutual_M = mutual;
  cfg.device.distance_D = distance;
  cfg.device.convention = convention;
  cfg.device.zeta_threshold = zeta_threshold;
  cfg.device.margin_threshold = margin_threshold;

  // Rabi rate: explicit value wins, then the supplied microwave flux, then
  // the pi-pulse time target.
  if (j.contains("rabi")) {
    const json& r = j["rabi"];
    if (!r.is_string()) {
      throw ConfigError("config.rabi must be an angular-rate string like \"1.5e10rad/s\"");
    }
    cfg.rabi = parse_quantity(r.get<std::string>(), Dimension::AngularRate);
  } else if (flux_amp > 0.0) {
    cfg.rabi = rabi_from_flux(sq.inductance, phi_12, flux_amp);
  } else if (tau_uw > 0.0) {
    cfg.rabi = std::numbers::pi / tau_uw;
  } else {
    throw ConfigError(
        "no Rabi rate: give config.rabi, device.budget.flux_amplitude or "
        "device.budget.tau_uw");
  }
  if (cfg.rabi <= 0.0) throw ConfigError("Rabi rate must be positive");
  if (cfg.device.flux_amplitude <= 0.0 && cfg.device.tau_uw_target <= 0.0) {
    cfg.device.tau_uw_target = std::numbers::pi / cfg.rabi;
  }

  // Couplings: explicit angular rates or the device formula per placement.
  const json& couplings = require(j, "couplings", "config");
  if (couplings.is_string()) {
    if (couplings.get<std::string>() != "from-device") {
      throw ConfigError("config.couplings must be a list or \"from-device\"");
    }
    cfg.couplings_from_device = true;
    for (const CouplingPlacement& place : cfg.device.placements) {
      const double g =
          std::abs(coupling_g(res, place, sq.inductance, convention));
      if (g <= 0.0) {
        throw ConfigError(
            "placement at a field node gives zero coupling; move the SQUID");
      }
      cfg.couplings.push_back(g);
    }
  } else if (couplings.is_array()) {
    cfg.couplings_from_device = false;
    for (const json& c : couplings) {
      if (!c.is_string()) {
        throw ConfigError("couplings must be angular-rate strings like \"7.5e9rad/s\"");
      }
      const double g = parse_quantity(c.get<std::string>(), Dimension::AngularRate);
      if (g <= 0.0) throw ConfigError("couplings must be positive");
      cfg.couplings.push_back(g);
    }
    if (static_cast<int>(cfg.couplings.size()) != cfg.n) {
      throw ConfigError("expected " + std::to_string(cfg.n) + " couplings, got " +
                        std::to_string(cfg.couplings.size()));
    }
  } else {
    throw ConfigError("config.couplings must be a list or \"from-device\"");
  }

  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + err.what());
  }
  return parse_config(j);
}

}  // namespace squidgate
