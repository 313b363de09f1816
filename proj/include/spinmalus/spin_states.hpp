#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spinmalus/sphere.hpp"

namespace spinmalus {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Spin magnitude stored as 2s, so half-integer spins stay exact.
struct SpinQuantumNumber {
  int twice_s;

  explicit SpinQuantumNumber(int twice_s_in);

  int dimension() const { return twice_s + 1; }
  double value() const { return 0.5 * twice_s; }
};

/// Pure state of one or more spins.
///
/// The single-party basis is |s, m> with m = -s, ..., +s ascending, so
/// component k corresponds to m = k - s. Parties combine by Kronecker
/// product in declaration order; the first party owns the slowest index.
struct SpinState {
  std::vector<SpinQuantumNumber> parties;
  ComplexVector amplitudes;
};

/// Density operator over the same basis and party ordering as SpinState.
/// Construction does not validate; the defect queries below report how far
/// a matrix is from being a state.
struct DensityMatrix {
  std::vector<int> dims;
  ComplexMatrix entries;

  int total_dim() const;
};

/// Raising and lowering matrices (S+, S-) with
/// <m+1|S+|m> = sqrt(s(s+1) - m(m+1)), in units of hbar = 1.
std::pair<ComplexMatrix, ComplexMatrix> ladder_operators(SpinQuantumNumber s);

/// diag(-s, ..., +s).
ComplexMatrix spin_z(SpinQuantumNumber s);

/// Rotation exp(tau S+ - conj(tau) S-) with tau = (theta/2) e^{-i phi},
/// carrying |s,-s> to the coherent state labelled by omega. Dense
/// scaling-and-squaring matrix exponential.
ComplexMatrix scs_rotation(SpinQuantumNumber s, const Direction& omega);

/// Coherent state via the rotation above. Cross-check for scs_closed_form;
/// the two share no code beyond the ladder matrices.
SpinState scs_exponential(SpinQuantumNumber s, const Direction& omega);

/// Coherent state from the closed-form amplitudes
///   C_k = sqrt(binom(2s, k)) sin^k(theta/2) cos^(2s-k)(theta/2) e^{-ik phi},
/// k = s + m. This is the production path everywhere else in the library.
SpinState scs_closed_form(SpinQuantumNumber s, const Direction& omega);

/// <a|b>. Parties must match in number and dimension.
Complex overlap(const SpinState& a, const SpinState& b);

/// |<omega|omega'>|^2 = cos^(4s)(alpha/2) with alpha the relative angle.
/// The spin-s Malus law, evaluated without building any state.
double malus_probability(SpinQuantumNumber s, const Direction& omega,
                         const Direction& omega_prime);

/// |x><x|. Requires x normalized to within 1e-8.
DensityMatrix projector(const SpinState& x);

SpinState tensor(const SpinState& a, const SpinState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Two spin-1/2 singlet (|+-> - |-+>)/sqrt2; the m_a=-1/2, m_b=+1/2
/// component carries the minus sign.
SpinState singlet_state();

/// Max entrywise distance of (2s+1)/(4pi) * sum_w |omega><omega| from the
/// identity. Vanishes (to roundoff) once n_theta, n_phi >= 2s + 1.
double resolution_of_identity_defect(SpinQuantumNumber s,
                                     const QuadratureGrid& grid);

/// Defect queries for DensityMatrix.
double hermiticity_defect(const DensityMatrix& rho);
double trace_defect(const DensityMatrix& rho);
double min_eigenvalue(const DensityMatrix& rho);

}  // namespace spinmalus
