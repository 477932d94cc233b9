#include "squidgate/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <lapacke.h>

#include "squidgate/units.hpp"

namespace squidgate {

namespace {

constexpr double kPi = std::numbers::pi;

void check_params(const SquidParams& p) {
  if (p.capacitance <= 0.0) throw std::invalid_argument("capacitance must be positive");
  if (p.inductance <= 0.0) throw std::invalid_argument("inductance must be positive");
  if (p.beta_L < 0.0) throw std::invalid_argument("beta_L must be >= 0");
  if (!std::isfinite(p.flux_bias)) throw std::invalid_argument("flux bias must be finite");
}

double potential(const SquidParams& p, double phi) {
  const double d = phi - p.flux_bias;
  return d * d / (2.0 * p.inductance) -
         p.josephson_energy() * std::cos(2.0 * kPi * phi / constants::phi0);
}

}  // namespace

double SquidParams::critical_current() const {
  return beta_L * constants::phi0 / (2.0 * kPi * inductance);
}

double SquidParams::josephson_energy() const {
  return critical_current() * constants::phi0 / (2.0 * kPi);
}

void discretized_hamiltonian(const SquidParams& params, int n_points,
                             double halfwidth, std::vector<double>& diag,
                             std::vector<double>& offdiag,
                             std::vector<double>& grid) {
  check_params(params);
  if (n_points < 16) throw std::invalid_argument("grid needs at least 16 points");
  if (halfwidth <= 0.0) throw std::invalid_argument("grid halfwidth must be positive");

  const double lo = params.flux_bias - halfwidth * constants::phi0;
  const double hi = params.flux_bias + halfwidth * constants::phi0;
  const double h = (hi - lo) / (n_points + 1);
  const double kinetic = constants::hbar * constants::hbar /
                         (2.0 * params.capacitance * h * h);

  grid.resize(n_points);
  diag.resize(n_points);
  offdiag.assign(n_points - 1, -kinetic);
  for (int i = 0; i < n_points; ++i) {
    grid[i] = lo + (i + 1) * h;
    diag[i] = 2.0 * kinetic + potential(params, grid[i]);
  }
}

GridSolve solve_grid(const SquidParams& params, int n_points, double halfwidth,
                     int levels) {
  if (levels < 1) throw std::invalid_argument("need at least one level");
  if (levels > n_points) throw std::invalid_argument("more levels than grid points");

  std::vector<double> diag, offdiag, grid;
  discretized_hamiltonian(params, n_points, halfwidth, diag, offdiag, grid);

  lapack_int found = 0;
  std::vector<double> w(n_points);
  std::vector<double> z(static_cast<size_t>(n_points) * levels);
  std::vector<lapack_int> isuppz(2 * levels);
  // MRRR; d and e are clobbered, w ascending, z columns orthonormal.
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', 'I', n_points, diag.data(), offdiag.data(),
      0.0, 0.0, 1, levels, 0.0, &found, w.data(), z.data(), n_points,
      isuppz.data());
  if (info != 0 || found < levels) {
    throw std::runtime_error("tridiagonal eigensolver failed (info " +
                             std::to_string(info) + ", found " +
                             std::to_string(found) + " of " +
                             std::to_string(levels) + " levels)");
  }

  GridSolve out;
  out.energies.assign(w.begin(), w.begin() + levels);
  out.grid = std::move(grid);
  out.eigenvectors.resize(n_points, levels);
  for (int j = 0; j < levels; ++j) {
    for (int i = 0; i < n_points; ++i) {
      out.eigenvectors(i, j) = z[static_cast<size_t>(j) * n_points + i];
    }
    // Pin the sign: largest-magnitude component positive.
    int arg = 0;
    out.eigenvectors.col(j).cwiseAbs().maxCoeff(&arg);
    if (out.eigenvectors(arg, j) < 0.0) out.eigenvectors.col(j) *= -1.0;
  }
  return out;
}

SpectrumResult solve_spectrum(const SquidParams& params,
                              const SpectrumSettings& settings) {
  if (settings.levels < 3) {
    throw std::invalid_argument("spectrum needs at least the lowest 3 levels");
  }
  const int n_coarse = settings.grid_points;
  const int n_fine = 2 * n_coarse + 1;  // halves the spacing exactly

  const GridSolve coarse =
      solve_grid(params, n_coarse, settings.halfwidth, settings.levels);
  const GridSolve fine =
      solve_grid(params, n_fine, settings.halfwidth, settings.levels);

  const double nu02_coarse = (coarse.energies[2] - coarse.energies[0]) / constants::h;
  const double nu02_fine = (fine.energies[2] - fine.energies[0]) / constants::h;
  const double delta = std::abs(nu02_fine - nu02_coarse) / std::abs(nu02_fine);
  if (delta > settings.convergence_tol) {
    std::ostringstream os;
    os << "spectrum not converged: nu_02 moved from " << nu02_coarse << " Hz ("
       << n_coarse << " points) to " << nu02_fine << " Hz (" << n_fine
       << " points), relative shift " << delta << " > "
       << settings.convergence_tol << "; refine the grid";
    throw std::runtime_error(os.str());
  }

  SpectrumResult result;
  result.energies = fine.energies;
  result.nu01 = (fine.energies[1] - fine.energies[0]) / constants::h;
  result.nu02 = nu02_fine;
  result.nu12 = (fine.energies[2] - fine.energies[1]) / constants::h;

  auto flux_element = [&fine](int i, int j) {
    double sum = 0.0;
    for (int k = 0; k < fine.eigenvectors.rows(); ++k) {
      sum += fine.eigenvectors(k, i) * fine.grid[k] * fine.eigenvectors(k, j);
    }
    return sum / constants::phi0;
  };
  result.phi01 = flux_element(0, 1);
  result.phi02 = flux_element(0, 2);
  result.phi12 = flux_element(1, 2);

  result.grid.points = n_fine;
  result.grid.lo = params.flux_bias - settings.halfwidth * constants::phi0;
  result.grid.hi = params.flux_bias + settings.halfwidth * constants::phi0;
  result.grid.spacing = (result.grid.hi - result.grid.lo) / (n_fine + 1);

  result.convergence.nu02_coarse = nu02_coarse;
  result.convergence.nu02_fine = nu02_fine;
  result.convergence.nu02_richardson =
      nu02_fine + (nu02_fine - nu02_coarse) / 3.0;
  result.convergence.relative_delta = delta;

  if (params.josephson_energy() == 0.0) {
    const double analytic =
        1.0 / (2.0 * kPi *
               std::sqrt(params.inductance * params.capacitance));
    HarmonicCheck check;
    check.analytic_nu = analytic;
    check.max_relative_deviation =
        std::max(std::abs(result.nu01 - analytic), std::abs(result.nu12 - analytic)) /
        analytic;
    result.harmonic = check;
  }
  return result;
}

std::vector<std::pair<double, double>> potential_profile(
    const SquidParams& params, double lo, double hi, int samples) {
  check_params(params);
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  if (hi <= lo) throw std::invalid_argument("profile range is empty");
  std::vector<std::pair<double, double>> profile;
  profile.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double phi = lo + (hi - lo) * i / (samples - 1);
    profile.emplace_back(phi, potential(params, phi));
  }
  return profile;
}

bool lambda_check(const SpectrumResult& result) {
  const double p01 = std::abs(result.phi01);
  return std::abs(result.phi02) >= 3.0 * p01 &&
         std::abs(result.phi12) >= 3.0 * p01;
}

}  // namespace squidgate
