#pragma once

#include <functional>

#include "spinmalus/quasi_dist.hpp"

namespace spinmalus {

/// Scalar observable evaluated on a grid, with the error estimated by
/// re-running on the doubled grid (2*n_theta, 2*n_phi).
struct ExperimentResult {
  double value;
  int n_theta;
  int n_phi;
  double estimated_error;
};

/// Transmission of a hidden direction through an analyzer: a map
/// (setting, lambda) -> [0, 1].
using Transmission = std::function<double(const Direction&, const Direction&)>;

/// Spin-1/2 analyzer response cos^2(alpha/2).
double stern_gerlach_transmission(const Direction& setting,
                                  const Direction& lambda);

/// Local hidden-variable model: a joint distribution over the two hidden
/// directions plus one transmission per wing.
struct HiddenVariableModel {
  QuasiDistribution distribution;  // two-party
  Transmission transmission_a;
  Transmission transmission_b;
};

/// Classical analyzer average: integral of P_cl(omega) cos^2(alpha) with
/// alpha the angle between omega and the analyzer axis. P_cl must be
/// nonnegative on every node visited (base and doubled grid).
ExperimentResult classical_malus(const QuasiDistribution& p_cl,
                                 const Direction& analyzer,
                                 const QuadratureGrid& grid);

/// Quantum average: integral of P(omega) cos^(4s)(alpha/2), i.e.
/// trace(rho_P * |analyzer><analyzer|) once P reconstructs rho_P. Negative
/// P is allowed here.
ExperimentResult quantum_malus_average(const QuasiDistribution& p,
                                       SpinQuantumNumber s,
                                       const Direction& analyzer,
                                       const QuadratureGrid& grid);

/// Coincidence probability of the model: the double integral of
/// distribution * transmission_a(a, la) * transmission_b(b, lb), the delta
/// term pairing lb with the antipode of la. Transmissions outside [0, 1]
/// (beyond 1e-12) are a domain error.
ExperimentResult hidden_variable_probability(const HiddenVariableModel& model,
                                             const Direction& a,
                                             const Direction& b,
                                             const QuadratureGrid& grid);

/// hidden_variable_probability with spin-1/2 analyzers on both wings;
/// identical arithmetic, shared code path.
ExperimentResult joint_probability(const QuasiDistribution& p,
                                   const Direction& a, const Direction& b,
                                   const QuadratureGrid& grid);

/// Two-qubit singlet coincidence <psi| Pi_a x Pi_b |psi> built from dense
/// matrices; equals (1 - cos alpha)/4. Reference value for the quadrature
/// results.
double quantum_joint_oracle(const Direction& a, const Direction& b);

/// Correlator from coincidence probabilities,
///   E(x, y) = j(x, y) + j(xbar, ybar) - j(x, ybar) - j(xbar, y),
/// antipodes standing in for the opposite analyzer outcomes.
double correlator(
    const std::function<double(const Direction&, const Direction&)>& joint,
    const Direction& x, const Direction& y);

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh_value(
    const std::function<double(const Direction&, const Direction&)>& joint,
    const Direction& a, const Direction& a_prime, const Direction& b,
    const Direction& b_prime);

/// Coplanar settings at which the singlet reaches S = +2*sqrt(2):
/// a = (0,0), a' = (pi/2,0), b = (3pi/4,pi), b' = (pi/4,pi).
struct ChshSettings {
  Direction a, a_prime, b, b_prime;
};
ChshSettings standard_chsh_settings();

}  // namespace spinmalus
