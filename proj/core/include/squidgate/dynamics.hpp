#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "squidgate/hilbert.hpp"

namespace squidgate {

/// Raised when evolution would push population through the Fock-space
/// truncation boundary (the |2>_l |n_max>_c sector would couple to the
/// missing |0>_l |n_max+1>_c ket).
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One resonant JC window on SQUID `squid` (1-based): coupling g (angular,
// rad/s) for `duration` seconds while the SQUID's 0-2 transition is tuned
// to the resonator.
struct JCInteraction {
  int squid = 1;
  double g = 0.0;
  double duration = 0.0;
};

// Resonant microwave pulse on the 1-2 transition of SQUID `squid`: Rabi
// rate `rabi` (angular, rad/s), drive phase `phase`, length `duration`.
struct DrivePulse {
  int squid = 1;
  double rabi = 0.0;
  double phase = 0.0;
  double duration = 0.0;
};

/// Propagates under the resonant JC interaction. Within each invariant
/// pair {|0>_l|m>, |2>_l|m-1>} the state rotates by sqrt(m) g t:
///   |0>|m>   ->  cos(sqrt(m) g t) |0>|m>   - i sin(sqrt(m) g t) |2>|m-1>
///   |2>|m-1> -> -i sin(sqrt(m) g t) |0>|m> +   cos(sqrt(m) g t) |2>|m-1>
/// |1>_l and |0>_l|0>_c are stationary. Throws TruncationError when the
/// |2>_l|n_max>_c population exceeds 1e-10 and duration > 0.
SystemState jc_evolve(const SystemState& state, const JCInteraction& jc);

/// Propagates under the resonant 1-2 drive; with theta = rabi*duration/2:
///   |1> ->  cos(theta) |1> - i e^{-i phase} sin(theta) |2>
///   |2> -> -i e^{+i phase} sin(theta) |1> + cos(theta) |2>
/// |0>_l amplitudes and the photon index are untouched.
SystemState drive_evolve(const SystemState& state, const DrivePulse& pulse);

/// exp(-i H t / hbar) for hbar = 1, by dense Hermitian diagonalization.
/// Intended as a brute-force cross-check, not a fast path. Throws
/// std::invalid_argument when H is not Hermitian to ~1e-12 (relative).
Eigen::MatrixXcd expm_oracle(const Eigen::MatrixXcd& hamiltonian, double t);

/// Expectation of the conserved excitation number of the JC interaction
/// on SQUID `squid`: photon number plus population of |2>_l.
double excitation_number(const SystemState& state, int squid);

}  // namespace squidgate
