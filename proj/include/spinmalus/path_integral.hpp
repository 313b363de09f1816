#pragma once

#include <complex>
#include <vector>

#include "spinmalus/spin_states.hpp"

namespace spinmalus {

/// Discretized path of coherent-state labels Omega_1 ... Omega_N, N >= 2.
/// Consecutive antipodal points are rejected (the step overlap vanishes and
/// its phase is undefined).
struct PathSpec {
  SpinQuantumNumber s;
  std::vector<Direction> points;
};

/// <end| M^K |start> against the exact overlap <end|start>, where
/// M = (2s+1)/(4pi) * sum_nodes w |omega><omega| is the quadrature form of
/// the identity. abs_error vanishes (to roundoff) on grids that resolve
/// degree 2s, i.e. n_theta, n_phi >= 2s + 1.
struct CompositionReport {
  Complex exact;
  Complex composed;
  int insertions;
  int n_theta;
  int n_phi;
  double abs_error;
};

CompositionReport compose_amplitude(SpinQuantumNumber s,
                                    const Direction& start,
                                    const Direction& end, int insertions,
                                    const QuadratureGrid& grid);

/// Product of the step overlaps <Omega_i|Omega_i-1> along the path.
Complex path_amplitude(const PathSpec& path);

/// Phase of the step product: sum of 2s * arg<omega_i|omega_i-1> over steps,
/// each step phase taken in (-pi, pi].
double exact_phase(const PathSpec& path);

/// s * sum of dphi_i * cos(theta_{i-1}) with dphi_i the azimuth step reduced
/// to the principal branch (-pi, pi]: the discrete form of s * integral p dq
/// in the canonical chart (q, p) = (phi, cos theta).
double discrete_action(const PathSpec& path);

/// exact_phase + discrete_action - s * (phi_N - phi_1), azimuths as stored.
/// Tends to zero with step refinement for open paths; for a closed loop it
/// is the geometric phase plus the winding term, 2*pi*s per turn.
double phase_convention_gap(const PathSpec& path);

struct CanonicalPoint {
  double q;  // azimuth as stored, [0, 2pi)
  double p;  // cos(theta)
};

/// Pointwise chart map (theta, phi) -> (q, p) = (phi, cos theta).
std::vector<CanonicalPoint> canonical_coordinates(const PathSpec& path);

/// Closed latitude loop at polar angle theta: n_steps equal azimuth steps
/// covering 2pi, n_steps + 1 stored points, first == last.
PathSpec latitude_loop(SpinQuantumNumber s, double theta, int n_steps);

}  // namespace spinmalus
