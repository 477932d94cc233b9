#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace squidgate {

// Three-level SQUID: |0>, |1> span the computational qubit, |2> is the
// auxiliary upper level used by the gate protocol.
enum class SquidLevel : int { L0 = 0, L1 = 1, L2 = 2 };

// Product ket |i_1 i_2 ... i_n>|m>_c of n SQUIDs and the resonator mode.
struct BasisLabel {
  std::vector<SquidLevel> levels;
  int photon = 0;
};

/// Pure state of n three-level SQUIDs coupled to one resonator mode whose
/// Fock space is truncated at n_max photons.
///
/// Amplitudes are ordered with SQUID 1 most significant and the photon
/// index fastest:
///   index = (base-3 value of i_1...i_n) * (n_max + 1) + m.
/// States are immutable; evolution operators return new instances.
class SystemState {
 public:
  SystemState(int n_qubits, int n_max, Eigen::VectorXcd amplitudes);

  int n_qubits() const { return n_qubits_; }
  int n_max() const { return n_max_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

  std::complex<double> amplitude(const BasisLabel& label) const;
  double norm() const { return amplitudes_.norm(); }

 private:
  int n_qubits_;
  int n_max_;
  Eigen::VectorXcd amplitudes_;
};

/// 3^n * (n_max + 1), the joint dimension.
int state_dim(int n_qubits, int n_max);

/// Flat index of a basis ket; throws std::invalid_argument when the label
/// length differs from n_qubits or the photon number exceeds n_max.
int basis_index(const BasisLabel& label, int n_qubits, int n_max);

/// Inverse of basis_index.
BasisLabel basis_label(int index, int n_qubits, int n_max);

/// Unit amplitude on the given ket, zero elsewhere.
SystemState basis_state(const BasisLabel& label, int n_max);

/// <a|b>; dimensions must agree.
std::complex<double> inner_product(const SystemState& a, const SystemState& b);

/// Total population with photon number >= min_photon.
double photon_population(const SystemState& state, int min_photon);

/// Population of SQUID `squid` (1-based) in the given level.
double level_population(const SystemState& state, int squid, SquidLevel level);

}  // namespace squidgate
