#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace squidgate {

/// rf SQUID electrical parameters. The junction critical current is fixed
/// by the screening parameter, I_c = beta_L Phi_0 / (2 pi L), and the
/// Josephson energy by E_J = I_c Phi_0 / (2 pi).
struct SquidParams {
  double capacitance = 0.0;  // F
  double inductance = 0.0;   // H
  double beta_L = 0.0;       // 2 pi L I_c / Phi_0
  double flux_bias = 0.0;    // external flux Phi_x, Wb

  double critical_current() const;
  double josephson_energy() const;
};

struct SpectrumSettings {
  int grid_points = 2048;     // interior points of the coarse grid
  double halfwidth = 1.0;     // grid extent around Phi_x, units of Phi_0
  int levels = 3;             // eigenpairs to compute
  double convergence_tol = 1e-3;  // allowed nu_02 shift under h -> h/2
};

struct GridInfo {
  int points = 0;
  double lo = 0.0;       // Wb
  double hi = 0.0;       // Wb
  double spacing = 0.0;  // Wb
};

struct ConvergenceInfo {
  double nu02_coarse = 0.0;     // Hz
  double nu02_fine = 0.0;       // Hz
  double nu02_richardson = 0.0; // Hz, h^2 extrapolation
  double relative_delta = 0.0;  // |fine - coarse| / fine
};

struct HarmonicCheck {
  double analytic_nu = 0.0;            // 1 / (2 pi sqrt(LC)), Hz
  double max_relative_deviation = 0.0; // of the level spacings
};

struct SpectrumResult {
  std::vector<double> energies;  // J, ascending
  double nu01 = 0.0, nu02 = 0.0, nu12 = 0.0;     // Hz
  double phi01 = 0.0, phi02 = 0.0, phi12 = 0.0;  // <i|Phi|j> / Phi_0
  GridInfo grid;
  ConvergenceInfo convergence;
  std::optional<HarmonicCheck> harmonic;  // present when E_J = 0
};

/// Eigenpairs of the flux-basis Hamiltonian
///   H = -(hbar^2 / 2C) d^2/dPhi^2 + (Phi - Phi_x)^2 / 2L
///       - E_J cos(2 pi Phi / Phi_0)
/// discretized with central differences and hard walls at the grid edges.
struct GridSolve {
  std::vector<double> energies;      // J, ascending, size k
  Eigen::MatrixXd eigenvectors;      // N x k, l2-normalized columns
  std::vector<double> grid;          // Phi values, Wb, size N
};
GridSolve solve_grid(const SquidParams& params, int n_points, double halfwidth,
                     int levels);

/// Tridiagonal matrix of the discretized Hamiltonian (for cross-checks).
void discretized_hamiltonian(const SquidParams& params, int n_points,
                             double halfwidth, std::vector<double>& diag,
                             std::vector<double>& offdiag,
                             std::vector<double>& grid);

/// Solves on the requested grid and again with the spacing halved; the
/// refined values are reported together with a Richardson estimate.
/// Throws std::runtime_error when nu_02 moves by more than
/// settings.convergence_tol between the two grids.
SpectrumResult solve_spectrum(const SquidParams& params,
                              const SpectrumSettings& settings = {});

/// Samples U(Phi) on [lo, hi] (Wb); pairs of (Phi, U).
std::vector<std::pair<double, double>> potential_profile(
    const SquidParams& params, double lo, double hi, int samples);

/// Lambda-configuration usability: both 0-2 and 1-2 flux matrix elements
/// at least three times the 0-1 element (inclusive).
bool lambda_check(const SpectrumResult& result);

}  // namespace squidgate
