#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spinmalus/sphere.hpp"
#include "spinmalus/spin_states.hpp"

namespace spinmalus {

/// Scalar function on the sphere with optional analytic partials; absent
/// partials fall back to central differences (step 1e-6).
struct SphereFunction {
  std::function<double(double theta, double phi)> value;
  std::function<double(double theta, double phi)> d_theta;
  std::function<double(double theta, double phi)> d_phi;
  std::string name;
};

/// Curved bracket {A, B} = (1/(s sin theta)) (dA/dphi dB/dtheta -
/// dA/dtheta dB/dphi). Throws near the poles where the chart degenerates.
double poisson_bracket(const SphereFunction& a, const SphereFunction& b,
                       SpinQuantumNumber s, const Direction& at);

struct TrajectorySample {
  double t;
  double theta;
  double phi;  // unwrapped: winding accumulates instead of folding
  double energy;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double step;
  bool used_finite_differences;
};

/// Fixed-step RK4 in the canonical chart (q, p) = (phi, cos theta):
///   dq/dt = (1/(s sin theta)) dH/dtheta,   dp/dt = (1/s) dH/dphi.
/// Integrates round(t_end / step) steps. Aborts (std::runtime_error) if the
/// trajectory reaches a pole or |p| exceeds 1 beyond roundoff, with the
/// failing time in the message.
Trajectory integrate_motion(const SphereFunction& hamiltonian,
                            SpinQuantumNumber s, const Direction& initial,
                            double t_end, double step);

/// H = omega0 * s * cos(theta): uniform field along z; phi precesses at
/// -omega0, theta is constant.
SphereFunction uniform_field_hamiltonian(double omega0, SpinQuantumNumber s);

/// H = omega0 * s * sin(theta) cos(phi): field along x.
SphereFunction transverse_field_hamiltonian(double omega0,
                                            SpinQuantumNumber s);

/// Full angular width 2*arccos(level^(1/4s)) at which the Malus
/// transmission cos^(4s)(alpha/2) falls to `level` in (0, 1). Scales as
/// s^(-1/2) for large s.
double transmission_width(SpinQuantumNumber s, double level);

/// cos^(4s)(alpha/2) for each alpha in [0, pi]; for large s this approaches
/// the Gaussian exp(-s alpha^2 / 2).
std::vector<double> concentration_profile(SpinQuantumNumber s,
                                          const std::vector<double>& alphas);

}  // namespace spinmalus
