#include "squidgate/device.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "squidgate/units.hpp"

namespace squidgate {

namespace {

constexpr double kPi = std::numbers::pi;

double photon_energy(const ResonatorParams& res, PhotonEnergyConvention c) {
  return c == PhotonEnergyConvention::HNu ? constants::h * res.nu_r
                                          : constants::hbar * res.nu_r;
}

void check_resonator(const ResonatorParams& res) {
  if (res.nu_r <= 0.0 || res.lambda <= 0.0 || res.length <= 0.0 ||
      res.L0 <= 0.0 || res.Q <= 0.0) {
    throw std::invalid_argument("resonator parameters must be positive");
  }
}

}  // namespace

const char* convention_name(PhotonEnergyConvention c) {
  return c == PhotonEnergyConvention::HNu ? "h_nu" : "hbar_nu";
}

double coupling_g(const ResonatorParams& res, const CouplingPlacement& place,
                  double squid_inductance, PhotonEnergyConvention convention) {
  check_resonator(res);
  if (place.M_sr <= 0.0) throw std::invalid_argument("M_sr must be positive");
  if (squid_inductance <= 0.0) throw std::invalid_argument("loop inductance must be positive");
  if (place.x < 0.0 || place.x > res.length) {
    throw std::invalid_argument("SQUID position x outside the resonator [0, l]");
  }
  // Zero-point current of the mode times the mode profile, coupled through
  // the mutual inductance into the 0-2 flux dipole.
  const double i_rms =
      std::sqrt(photon_energy(res, convention) / (res.L0 * res.length));
  return place.M_sr / (squid_inductance * constants::hbar) * i_rms *
         place.phi_02 * constants::phi0 *
         std::sin(2.0 * kPi * place.x / res.lambda);
}

double rabi_from_flux(double inductance, double phi_12, double flux_amplitude) {
  if (inductance <= 0.0) throw std::invalid_argument("inductance must be positive");
  if (phi_12 <= 0.0) throw std::invalid_argument("phi_12 must be positive");
  if (flux_amplitude < 0.0) throw std::invalid_argument("flux amplitude must be >= 0");
  return phi_12 * constants::phi0 * flux_amplitude /
         (inductance * constants::hbar);
}

double flux_for_rabi(double inductance, double phi_12, double rabi) {
  if (inductance <= 0.0) throw std::invalid_argument("inductance must be positive");
  if (phi_12 <= 0.0) throw std::invalid_argument("phi_12 must be positive");
  if (rabi < 0.0) throw std::invalid_argument("Rabi rate must be >= 0");
  return rabi * inductance * constants::hbar / (phi_12 * constants::phi0);
}

double photon_lifetime(const ResonatorParams& res) {
  check_resonator(res);
  return res.Q / (2.0 * kPi * res.nu_r);
}

TimeBudget time_budget(int n, const std::vector<double>& g_list,
                       const BudgetParams& budget, double margin_threshold) {
  if (n < 2) throw std::invalid_argument("time budget needs n >= 2");
  if (static_cast<int>(g_list.size()) != n) {
    throw std::invalid_argument("expected one coupling per SQUID");
  }
  if (budget.gamma2_inv <= 0.0 || budget.kappa_inv <= 0.0 ||
      budget.tau_a < 0.0 || budget.tau_uw < 0.0) {
    throw std::invalid_argument("budget times must be positive (gaps >= 0)");
  }

  TimeBudget out;
  out.tau_r.reserve(n);
  for (double g : g_list) {
    if (g <= 0.0) throw std::invalid_argument("couplings must be positive");
    out.tau_r.push_back(kPi / (2.0 * g));
  }
  // Two pi/2 passes per control, one pi window (two tau_r) on the target,
  // 2n retune gaps, two microwave pulses.
  double jc = 0.0;
  for (int l = 0; l < n - 1; ++l) jc += 2.0 * out.tau_r[l];
  jc += 2.0 * out.tau_r[n - 1];
  out.tau_total = jc + 2.0 * n * budget.tau_a + 2.0 * budget.tau_uw;

  out.margin_gamma2 = out.tau_total / budget.gamma2_inv;
  out.margin_kappa = out.tau_total / budget.kappa_inv;
  out.pass = out.margin_gamma2 < margin_threshold &&
             out.margin_kappa < margin_threshold;
  return out;
}

double zeta(const CrosstalkParams& cross) {
  if (cross.M < 0.0) throw std::invalid_argument("mutual inductance M must be >= 0");
  if (cross.L_l <= 0.0 || cross.L_lplus1 <= 0.0) {
    throw std::invalid_argument("loop inductances must be positive");
  }
  if (cross.phi_max < 0.0) throw std::invalid_argument("phi_max must be >= 0");
  const double rate = std::min(cross.g_min, cross.rabi);
  if (rate <= 0.0) {
    throw std::invalid_argument(
        "zeta denominator min(hbar g, hbar Omega_12) vanishes");
  }
  return cross.M * cross.phi_max * constants::phi0 * constants::phi0 /
         (cross.L_l * cross.L_lplus1 * constants::hbar * rate);
}

FeasibilityReport feasibility_report(const DeviceContext& ctx) {
  std::vector<std::string> missing;
  if (ctx.n < 2) missing.push_back("n (>= 2)");
  if (ctx.squid.inductance <= 0.0) missing.push_back("squid.L");
  if (ctx.squid.capacitance <= 0.0) missing.push_back("squid.C");
  if (ctx.resonator.nu_r <= 0.0) missing.push_back("resonator.nu_r");
  if (ctx.resonator.lambda <= 0.0) missing.push_back("resonator.lambda");
  if (ctx.resonator.length <= 0.0) missing.push_back("resonator.l");
  if (ctx.resonator.L0 <= 0.0) missing.push_back("resonator.L0");
  if (ctx.resonator.Q <= 0.0) missing.push_back("resonator.Q");
  if (static_cast<int>(ctx.placements.size()) != ctx.n) {
    missing.push_back("placements (one per SQUID)");
  }
  if (ctx.phi_01 <= 0.0) missing.push_back("phi_01");
  if (ctx.phi_12 <= 0.0) missing.push_back("phi_12");
  if (ctx.flux_amplitude <= 0.0 && ctx.tau_uw_target <= 0.0) {
    missing.push_back("flux_amplitude or tau_uw");
  }
  if (ctx.gamma2_inv <= 0.0) missing.push_back("gamma2_inv");
  if (ctx.tau_a < 0.0) missing.push_back("tau_a (>= 0)");
  if (ctx.mutual_M < 0.0) missing.push_back("mutual_M (>= 0)");
  if (!missing.empty()) {
    std::string msg = "feasibility context incomplete, missing/invalid:";
    for (const std::string& m : missing) msg += " " + m;
    throw ConfigError(msg);
  }

  FeasibilityReport report;
  report.convention = ctx.convention;
  report.zeta_threshold = ctx.zeta_threshold;
  report.margin_threshold = ctx.margin_threshold;

  const PhotonEnergyConvention alt =
      ctx.convention == PhotonEnergyConvention::HNu
          ? PhotonEnergyConvention::HbarNu
          : PhotonEnergyConvention::HNu;
  const std::string g_formula =
      "|M_sr/(L hbar) sqrt(E_ph/(L0 l)) phi_02 Phi_0 sin(2 pi x/lambda)|, "
      "E_ph = ";
  std::vector<double> g_mags;
  for (const CouplingPlacement& place : ctx.placements) {
    const double g =
        coupling_g(ctx.resonator, place, ctx.squid.inductance, ctx.convention);
    const double g_alt =
        coupling_g(ctx.resonator, place, ctx.squid.inductance, alt);
    g_mags.push_back(std::abs(g));
    report.g.push_back({std::abs(g), "rad/s",
                        g_formula + convention_name(ctx.convention)});
    report.g_alternate.push_back(
        {std::abs(g_alt), "rad/s", g_formula + convention_name(alt)});
  }

  double rabi_rate = 0.0;
  double flux = ctx.flux_amplitude;
  if (flux > 0.0) {
    rabi_rate = rabi_from_flux(ctx.squid.inductance, ctx.phi_12, flux);
    report.flux_amplitude = {flux, "Wb", "supplied"};
  } else {
    rabi_rate = kPi / ctx.tau_uw_target;
    flux = flux_for_rabi(ctx.squid.inductance, ctx.phi_12, rabi_rate);
    report.flux_amplitude = {
        flux, "Wb", "Omega_12 L hbar/(phi_12 Phi_0), from tau_uw target"};
  }
  report.rabi = {rabi_rate, "rad/s", "phi_12 Phi_0 flux/(L hbar)"};
  const double tau_uw = kPi / rabi_rate;
  report.microwave_time = {tau_uw, "s", "pi/Omega_12"};

  const double kappa_inv = photon_lifetime(ctx.resonator);
  report.kappa_inv = {kappa_inv, "s", "Q/(2 pi nu_r)"};

  const TimeBudget budget =
      time_budget(ctx.n, g_mags,
                  {ctx.gamma2_inv, kappa_inv, ctx.tau_a, tau_uw},
                  ctx.margin_threshold);
  for (double t : budget.tau_r) report.tau_r.push_back({t, "s", "pi/(2 g_l)"});
  report.tau_total = {budget.tau_total, "s",
                      "sum_controls 2 tau_r + 2 tau_r_target + 2 n tau_a + "
                      "2 tau_uw"};
  report.margin_gamma2 = {budget.margin_gamma2, "1", "tau_total/gamma2_inv"};
  report.margin_kappa = {budget.margin_kappa, "1", "tau_total/kappa_inv"};

  // Identical SQUIDs: phi_ij^(l) = phi_ij^(l+1) except phi_02, which may
  // vary with placement; take the worst nearest pair.
  double phi_max = std::max(ctx.phi_01 * ctx.phi_01, ctx.phi_12 * ctx.phi_12);
  for (size_t l = 0; l + 1 < ctx.placements.size(); ++l) {
    phi_max = std::max(phi_max, ctx.placements[l].phi_02 *
                                    ctx.placements[l + 1].phi_02);
  }
  double zeta_val = 0.0;
  if (ctx.mutual_M > 0.0) {
    CrosstalkParams cross;
    cross.M = ctx.mutual_M;
    cross.L_l = ctx.squid.inductance;
    cross.L_lplus1 = ctx.squid.inductance;
    cross.phi_max = phi_max;
    cross.g_min = *std::min_element(g_mags.begin(), g_mags.end());
    cross.rabi = rabi_rate;
    cross.D = ctx.distance_D;
    zeta_val = zeta(cross);
  }
  report.zeta_value = {zeta_val, "1",
                       "M phi_max Phi_0^2/(L_l L_l+1 min(hbar g, hbar "
                       "Omega_12))"};

  report.pass = true;
  if (zeta_val >= ctx.zeta_threshold) {
    report.pass = false;
    report.failures.push_back("zeta exceeds threshold");
  }
  if (!budget.pass) {
    report.pass = false;
    if (budget.margin_gamma2 >= ctx.margin_threshold) {
      report.failures.push_back("tau_total too close to gamma2_inv");
    }
    if (budget.margin_kappa >= ctx.margin_threshold) {
      report.failures.push_back("tau_total too close to kappa_inv");
    }
  }
  return report;
}

}  // namespace squidgate
