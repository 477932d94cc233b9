#include "squidgate/hilbert.hpp"

#include <stdexcept>
#include <string>

namespace squidgate {

namespace {

void check_system_shape(int n_qubits, int n_max) {
  if (n_qubits < 1) {
    throw std::invalid_argument("system needs at least one SQUID, got n = " +
                                std::to_string(n_qubits));
  }
  if (n_max < 0) {
    throw std::invalid_argument("photon truncation n_max must be >= 0, got " +
                                std::to_string(n_max));
  }
}

}  // namespace

SystemState::SystemState(int n_qubits, int n_max, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), n_max_(n_max), amplitudes_(std::move(amplitudes)) {
  check_system_shape(n_qubits_, n_max_);
  if (amplitudes_.size() != state_dim(n_qubits_, n_max_)) {
    throw std::invalid_argument(
        "amplitude vector has length " + std::to_string(amplitudes_.size()) +
        ", expected " + std::to_string(state_dim(n_qubits_, n_max_)));
  }
}

std::complex<double> SystemState::amplitude(const BasisLabel& label) const {
  return amplitudes_[basis_index(label, n_qubits_, n_max_)];
}

int state_dim(int n_qubits, int n_max) {
  check_system_shape(n_qubits, n_max);
  int dim = n_max + 1;
  for (int l = 0; l < n_qubits; ++l) dim *= 3;
  return dim;
}

int basis_index(const BasisLabel& label, int n_qubits, int n_max) {
  check_system_shape(n_qubits, n_max);
  if (static_cast<int>(label.levels.size()) != n_qubits) {
    throw std::invalid_argument(
        "basis label has " + std::to_string(label.levels.size()) +
        " SQUID levels, system has " + std::to_string(n_qubits));
  }
  if (label.photon < 0 || label.photon > n_max) {
    throw std::invalid_argument("photon number " + std::to_string(label.photon) +
                                " outside truncation [0, " +
                                std::to_string(n_max) + "]");
  }
  int value = 0;
  for (SquidLevel level : label.levels) {
    int i = static_cast<int>(level);
    if (i < 0 || i > 2) throw std::invalid_argument("SQUID level outside {0,1,2}");
    value = value * 3 + i;
  }
  return value * (n_max + 1) + label.photon;
}

BasisLabel basis_label(int index, int n_qubits, int n_max) {
  if (index < 0 || index >= state_dim(n_qubits, n_max)) {
    throw std::invalid_argument("basis index " + std::to_string(index) +
                                " outside [0, " +
                                std::to_string(state_dim(n_qubits, n_max)) + ")");
  }
  BasisLabel label;
  label.photon = index % (n_max + 1);
  int value = index / (n_max + 1);
  label.levels.assign(n_qubits, SquidLevel::L0);
  for (int l = n_qubits - 1; l >= 0; --l) {
    label.levels[l] = static_cast<SquidLevel>(value % 3);
    value /= 3;
  }
  return label;
}

SystemState basis_state(const BasisLabel& label, int n_max) {
  int n = static_cast<int>(label.levels.size());
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(state_dim(n, n_max));
  amps[basis_index(label, n, n_max)] = 1.0;
  return SystemState(n, n_max, std::move(amps));
}

std::complex<double> inner_product(const SystemState& a, const SystemState& b) {
  if (a.n_qubits() != b.n_qubits() || a.n_max() != b.n_max()) {
    throw std::invalid_argument("inner product between mismatched spaces");
  }
  return a.amplitudes().dot(b.amplitudes());
}

double photon_population(const SystemState& state, int min_photon) {
  const int period = state.n_max() + 1;
  double pop = 0.0;
  for (int k = 0; k < state.dim(); ++k) {
    if (k % period >= min_photon) pop += std::norm(state.amplitudes()[k]);
  }
  return pop;
}

double level_population(const SystemState& state, int squid, SquidLevel level) {
  if (squid < 1 || squid > state.n_qubits()) {
    throw std::invalid_argument("SQUID index " + std::to_string(squid) +
                                " outside 1.." + std::to_string(state.n_qubits()));
  }
  // Stride of SQUID `squid` in the flattened index.
  int stride = state.n_max() + 1;
  for (int l = state.n_qubits(); l > squid; --l) stride *= 3;
  double pop = 0.0;
  for (int k = 0; k < state.dim(); ++k) {
    if ((k / stride) % 3 == static_cast<int>(level)) {
      pop += std::norm(state.amplitudes()[k]);
    }
  }
  return pop;
}

}  // namespace squidgate
