#pragma once

// Brute-force operator construction for cross-checking the analytic
// propagators: everything here is built from Kronecker products and dense
// matrix exponentials, independent of the library's index arithmetic.

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "squidgate/dynamics.hpp"
#include "squidgate/hilbert.hpp"
#include "squidgate/protocol.hpp"

namespace oracle {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using complexd = std::complex<double>;

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// a|m> = sqrt(m)|m-1> on the truncated Fock space.
inline MatrixXcd destroy(int n_max) {
  MatrixXcd a = MatrixXcd::Zero(n_max + 1, n_max + 1);
  for (int m = 1; m <= n_max; ++m) a(m - 1, m) = std::sqrt(double(m));
  return a;
}

// |bra><ket| on one three-level SQUID.
inline MatrixXcd level_op(int bra, int ket) {
  MatrixXcd op = MatrixXcd::Zero(3, 3);
  op(bra, ket) = 1.0;
  return op;
}

// squid_op on SQUID `squid` (1-based), photon_op on the resonator slot,
// identity elsewhere; ordering matches the state layout (SQUID 1 slowest,
// photon fastest).
inline MatrixXcd embed(int n, int n_max, int squid, const MatrixXcd& squid_op,
                       const MatrixXcd& photon_op) {
  MatrixXcd out = MatrixXcd::Identity(1, 1);
  for (int l = 1; l <= n; ++l) {
    out = kron(out, l == squid ? squid_op : MatrixXcd::Identity(3, 3));
  }
  return kron(out, photon_op);
}

// Resonant JC coupling g (a^dag |0><2| + a |2><0|) on one SQUID.
inline MatrixXcd jc_hamiltonian(int n, int n_max, int squid, double g) {
  const MatrixXcd a = destroy(n_max);
  return g * (embed(n, n_max, squid, level_op(0, 2), a.adjoint()) +
              embed(n, n_max, squid, level_op(2, 0), a));
}

// Resonant 1-2 drive, RWA frame.
inline MatrixXcd drive_hamiltonian(int n, int n_max, int squid, double rabi,
                                   double phase) {
  const complexd e = std::exp(complexd(0.0, phase));
  const MatrixXcd op = e * level_op(1, 2) + std::conj(e) * level_op(2, 1);
  return 0.5 * rabi *
         embed(n, n_max, squid, op, MatrixXcd::Identity(n_max + 1, n_max + 1));
}

inline MatrixXcd hadamard_matrix(int n, int n_max, int squid) {
  const double r = 1.0 / std::sqrt(2.0);
  MatrixXcd h = MatrixXcd::Identity(3, 3);
  h(0, 0) = r; h(0, 1) = r;
  h(1, 0) = r; h(1, 1) = -r;
  return embed(n, n_max, squid, h,
               MatrixXcd::Identity(n_max + 1, n_max + 1));
}

// "201", photon 1 -> |2 0 1>|1>.
inline squidgate::BasisLabel label_of(const std::string& levels, int photon) {
  squidgate::BasisLabel label;
  label.photon = photon;
  for (char c : levels) {
    label.levels.push_back(static_cast<squidgate::SquidLevel>(c - '0'));
  }
  return label;
}

inline squidgate::SystemState ket(const std::string& levels, int photon,
                                  int n_max) {
  return squidgate::basis_state(label_of(levels, photon), n_max);
}

inline complexd amp(const squidgate::SystemState& s, const std::string& levels,
                    int photon) {
  return s.amplitude(label_of(levels, photon));
}

inline VectorXcd random_state(int dim, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  VectorXcd v(dim);
  for (int k = 0; k < dim; ++k) v[k] = complexd(gauss(rng), gauss(rng));
  return v / v.norm();
}

// Zeroes the |2>_squid |n_max> sector (whose JC partner lies outside the
// truncation) and renormalizes, so both evolution routes stay comparable.
inline VectorXcd clear_truncation_boundary(VectorXcd v, int n, int n_max,
                                           int squid) {
  const int dim = static_cast<int>(v.size());
  int stride = n_max + 1;
  for (int l = n; l > squid; --l) stride *= 3;
  for (int k = 0; k < dim; ++k) {
    if ((k / stride) % 3 == 2 && k % (n_max + 1) == n_max) v[k] = 0.0;
  }
  return v / v.norm();
}

// Product of per-step propagators, each built by dense exponentiation
// (Hadamard steps use the exact matrix).
inline MatrixXcd compose_schedule_dense(const squidgate::Schedule& s,
                                        int n_max) {
  const int dim = squidgate::state_dim(s.n, n_max);
  MatrixXcd u = MatrixXcd::Identity(dim, dim);
  for (const squidgate::ScheduleStep& step : s.steps) {
    MatrixXcd u_step;
    switch (step.kind) {
      case squidgate::StepKind::MicrowavePi:
        u_step = squidgate::expm_oracle(
            drive_hamiltonian(s.n, n_max, step.squid, s.rabi, step.phase),
            step.duration);
        break;
      case squidgate::StepKind::JCHalf:
      case squidgate::StepKind::JCFull:
        u_step = squidgate::expm_oracle(
            jc_hamiltonian(s.n, n_max, step.squid,
                           s.couplings[step.squid - 1]),
            step.duration);
        break;
      case squidgate::StepKind::Hadamard:
        u_step = hadamard_matrix(s.n, n_max, step.squid);
        break;
    }
    u = u_step * u;
  }
  return u;
}

// Restriction of a full-space unitary to the computational block
// (qubit levels, vacuum resonator); qubit 1 is the most significant bit.
inline MatrixXcd computational_block(const MatrixXcd& u, int n, int n_max) {
  const int dim = 1 << n;
  auto index_of = [n, n_max](int bits) {
    squidgate::BasisLabel label;
    label.photon = 0;
    for (int l = 0; l < n; ++l) {
      label.levels.push_back(((bits >> (n - 1 - l)) & 1)
                                 ? squidgate::SquidLevel::L1
                                 : squidgate::SquidLevel::L0);
    }
    return squidgate::basis_index(label, n, n_max);
  };
  MatrixXcd block(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      block(i, j) = u(index_of(i), index_of(j));
    }
  }
  return block;
}

}  // namespace oracle
