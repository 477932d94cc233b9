#include "squidgate/dynamics.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace squidgate {

namespace {

constexpr std::complex<double> kMinusI{0.0, -1.0};
constexpr double kTruncationTol = 1e-10;

int squid_stride(const SystemState& state, int squid) {
  if (squid < 1 || squid > state.n_qubits()) {
    throw std::invalid_argument("SQUID index " + std::to_string(squid) +
                                " outside 1.." + std::to_string(state.n_qubits()));
  }
  int stride = state.n_max() + 1;
  for (int l = state.n_qubits(); l > squid; --l) stride *= 3;
  return stride;
}

}  // namespace

SystemState jc_evolve(const SystemState& state, const JCInteraction& jc) {
  const int stride = squid_stride(state, jc.squid);
  if (jc.g <= 0.0) throw std::invalid_argument("JC coupling must be positive");
  if (jc.duration < 0.0) throw std::invalid_argument("JC duration must be >= 0");
  if (jc.duration == 0.0) return state;

  const int period = state.n_max() + 1;

  // The pair partner of |2>_l|n_max> lives outside the truncated space;
  // refuse to evolve when that sector is populated.
  double boundary = 0.0;
  for (int k = 0; k < state.dim(); ++k) {
    if ((k / stride) % 3 == 2 && k % period == state.n_max()) {
      boundary += std::norm(state.amplitudes()[k]);
    }
  }
  if (boundary > kTruncationTol) {
    throw TruncationError(
        "population " + std::to_string(boundary) + " in |2>_" +
        std::to_string(jc.squid) + "|n_max=" + std::to_string(state.n_max()) +
        "> would leak outside the Fock truncation; raise n_max");
  }

  Eigen::VectorXcd amps = state.amplitudes();
  for (int k = 0; k < state.dim(); ++k) {
    const int m = k % period;
    if ((k / stride) % 3 != 0 || m < 1) continue;
    // k = |0>_l|m>, p = |2>_l|m-1>.
    const int p = k + 2 * stride - 1;
    const double angle = std::sqrt(static_cast<double>(m)) * jc.g * jc.duration;
    const double c = std::cos(angle), s = std::sin(angle);
    const std::complex<double> a0 = state.amplitudes()[k];
    const std::complex<double> a2 = state.amplitudes()[p];
    amps[k] = c * a0 + kMinusI * s * a2;
    amps[p] = kMinusI * s * a0 + c * a2;
  }
  return SystemState(state.n_qubits(), state.n_max(), std::move(amps));
}

SystemState drive_evolve(const SystemState& state, const DrivePulse& pulse) {
  const int stride = squid_stride(state, pulse.squid);
  if (pulse.rabi <= 0.0) throw std::invalid_argument("Rabi rate must be positive");
  if (pulse.duration < 0.0) throw std::invalid_argument("pulse duration must be >= 0");
  if (pulse.duration == 0.0) return state;

  const double theta = 0.5 * pulse.rabi * pulse.duration;
  const double c = std::cos(theta), s = std::sin(theta);
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, pulse.phase));

  Eigen::VectorXcd amps = state.amplitudes();
  for (int k = 0; k < state.dim(); ++k) {
    if ((k / stride) % 3 != 1) continue;
    // k = |1>_l, p = |2>_l, same photon number.
    const int p = k + stride;
    const std::complex<double> a1 = state.amplitudes()[k];
    const std::complex<double> a2 = state.amplitudes()[p];
    amps[k] = c * a1 + kMinusI * phase * s * a2;
    amps[p] = kMinusI * std::conj(phase) * s * a1 + c * a2;
  }
  return SystemState(state.n_qubits(), state.n_max(), std::move(amps));
}

Eigen::MatrixXcd expm_oracle(const Eigen::MatrixXcd& hamiltonian, double t) {
  if (hamiltonian.rows() != hamiltonian.cols()) {
    throw std::invalid_argument("Hamiltonian must be square");
  }
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  const double defect =
      (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * scale) {
    throw std::invalid_argument("Hamiltonian is not Hermitian (defect " +
                                std::to_string(defect / scale) + " relative)");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  const Eigen::VectorXd& w = es.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    phases[j] = std::exp(std::complex<double>(0.0, -w[j] * t));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double excitation_number(const SystemState& state, int squid) {
  const int stride = squid_stride(state, squid);
  const int period = state.n_max() + 1;
  double total = 0.0;
  for (int k = 0; k < state.dim(); ++k) {
    const double pop = std::norm(state.amplitudes()[k]);
    total += pop * (k % period);
    if ((k / stride) % 3 == 2) total += pop;
  }
  return total;
}

}  // namespace squidgate
