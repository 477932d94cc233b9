#pragma once

#include <map>
#include <string>
#include <vector>

#include "squidgate/spectrum.hpp"

namespace squidgate {

// The photon energy quantum entering the coupling constant. The device
// tables quote cyclic frequencies, so h*nu_r reproduces the tabulated
// coupling strength; hbar*nu_r is the literal alternative and is reported
// alongside.
enum class PhotonEnergyConvention { HNu, HbarNu };

const char* convention_name(PhotonEnergyConvention c);

struct ResonatorParams {
  double nu_r = 0.0;    // mode frequency, Hz (cyclic)
  double lambda = 0.0;  // mode wavelength, m
  double length = 0.0;  // resonator length l, m
  double L0 = 0.0;      // inductance per unit length, H/m
  double Q = 0.0;       // loaded quality factor
  // Documented pass-through geometry (d, w, t, eps_e); echoed in reports.
  std::map<std::string, std::string> geometry;
};

struct CouplingPlacement {
  double M_sr = 0.0;    // SQUID-resonator mutual inductance, H
  double x = 0.0;       // position along the resonator, m
  double phi_02 = 0.0;  // flux matrix element, dimensionless
};

struct BudgetParams {
  double gamma2_inv = 0.0;  // |2> relaxation time, s
  double kappa_inv = 0.0;   // photon lifetime, s
  double tau_a = 0.0;       // retune time, s
  double tau_uw = 0.0;      // microwave pi-pulse time, s
};

struct CrosstalkParams {
  double M = 0.0;         // nearest-SQUID mutual inductance, H
  double L_l = 0.0;       // loop inductances of the pair, H
  double L_lplus1 = 0.0;
  double phi_max = 0.0;   // max over ij of phi_ij^(l) * phi_ij^(l+1)
  double g_min = 0.0;     // smallest JC coupling, rad/s
  double rabi = 0.0;      // Omega_12, rad/s
  double D = 0.0;         // nearest-SQUID distance, m (documentation)
};

/// hbar g = (M_sr/L) sqrt(E_photon/(L0 l)) (phi_02 Phi_0) sin(2 pi x/lambda)
/// with E_photon = h nu_r by default. Signed by the mode function; the
/// sign is a gauge choice absorbed into the level phases, so schedules use
/// the magnitude. Throws when x lies outside [0, l].
double coupling_g(const ResonatorParams& res, const CouplingPlacement& place,
                  double squid_inductance,
                  PhotonEnergyConvention convention = PhotonEnergyConvention::HNu);

/// Omega_12 = (phi_12 Phi_0) flux_amplitude / (L hbar), where
/// flux_amplitude is the microwave flux threading the loop (Wb).
double rabi_from_flux(double inductance, double phi_12, double flux_amplitude);

/// Flux amplitude required for a given Rabi rate (inverse of the above).
double flux_for_rabi(double inductance, double phi_12, double rabi);

/// kappa^-1 = Q / (2 pi nu_r).
double photon_lifetime(const ResonatorParams& res);

struct TimeBudget {
  std::vector<double> tau_r;  // pi/(2 g_l) per SQUID, s
  double tau_total = 0.0;     // s
  double margin_gamma2 = 0.0; // tau_total / gamma2_inv
  double margin_kappa = 0.0;  // tau_total / kappa_inv
  bool pass = false;
};

/// Wall-clock time of the n-qubit schedule: two pi/2 windows per control,
/// one pi window on the target, 2n retune gaps and the two microwave
/// pulses. Equal couplings give the closed form 2n(tau_r + tau_a) +
/// 2 tau_uw. Margins pass when both ratios are below margin_threshold.
TimeBudget time_budget(int n, const std::vector<double>& g_list,
                       const BudgetParams& budget,
                       double margin_threshold = 1e-1);

/// zeta = M phi_max Phi_0^2 / (L_l L_{l+1} min{hbar g, hbar Omega_12});
/// direct SQUID-SQUID coupling is negligible when zeta << 1. Throws on a
/// zero denominator.
double zeta(const CrosstalkParams& cross);

// A reported number with its unit and the formula that produced it.
struct Quantity {
  double value = 0.0;
  std::string unit;
  std::string formula;
};

struct FeasibilityReport {
  std::vector<Quantity> g;            // per SQUID, magnitude
  std::vector<Quantity> g_alternate;  // with the other energy convention
  std::vector<Quantity> tau_r;
  Quantity tau_total;
  Quantity margin_gamma2;
  Quantity margin_kappa;
  Quantity kappa_inv;
  Quantity rabi;
  Quantity microwave_time;
  Quantity flux_amplitude;  // supplied, or required for the target pulse
  Quantity zeta_value;
  bool pass = false;
  std::vector<std::string> failures;
  PhotonEnergyConvention convention = PhotonEnergyConvention::HNu;
  double zeta_threshold = 1e-3;
  double margin_threshold = 1e-1;
};

/// Everything needed to judge an n-SQUID device: identical SQUIDs at the
/// given placements along one resonator. Exactly one of flux_amplitude
/// and tau_uw_target must be positive; the other is derived.
struct DeviceContext {
  int n = 0;
  SquidParams squid;
  ResonatorParams resonator;
  std::vector<CouplingPlacement> placements;  // size n
  double phi_01 = 0.0;
  double phi_12 = 0.0;
  double flux_amplitude = 0.0;  // Wb
  double tau_uw_target = 0.0;   // s
  double gamma2_inv = 0.0;      // s
  double tau_a = 0.0;           // s
  double mutual_M = 0.0;        // H, >= 0
  double distance_D = 0.0;      // m, documentation
  PhotonEnergyConvention convention = PhotonEnergyConvention::HNu;
  double zeta_threshold = 1e-3;
  double margin_threshold = 1e-1;
};

/// Aggregates coupling constants, the time budget, the photon lifetime and
/// the crosstalk bound into one verdict. Throws ConfigError listing the
/// missing fields when the context is incomplete.
FeasibilityReport feasibility_report(const DeviceContext& ctx);

}  // namespace squidgate
