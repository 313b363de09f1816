#include "spinmalus/path_integral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinmalus {

namespace {

void validate_path(const PathSpec& path) {
  if (path.points.size() < 2) {
    throw std::invalid_argument("path needs at least two points");
  }
  for (size_t i = 1; i < path.points.size(); ++i) {
    if (relative_angle(path.points[i - 1], path.points[i]) > kPi - 1e-9) {
      throw std::domain_error(
          "consecutive path points at index " + std::to_string(i - 1) +
          " are (nearly) antipodal; the step overlap vanishes");
    }
  }
}

// Spin-1/2 step overlap <b|a>; the spin-s overlap is its 2s-th power.
Complex half_overlap(const Direction& b, const Direction& a) {
  const double cb = std::cos(0.5 * b.theta);
  const double sb = std::sin(0.5 * b.theta);
  const double ca = std::cos(0.5 * a.theta);
  const double sa = std::sin(0.5 * a.theta);
  return cb * ca + std::exp(Complex(0.0, b.phi - a.phi)) * sb * sa;
}

double principal_branch(double angle) {
  double r = std::remainder(angle, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

}  // namespace

CompositionReport compose_amplitude(SpinQuantumNumber s,
                                    const Direction& start,
                                    const Direction& end, int insertions,
                                    const QuadratureGrid& grid) {
  if (insertions < 0) {
    throw std::invalid_argument("compose_amplitude: insertions must be >= 0");
  }
  const SpinState from = scs_closed_form(s, start);
  const SpinState to = scs_closed_form(s, end);

  const int d = s.dimension();
  ComplexMatrix kernel = ComplexMatrix::Zero(d, d);
  for (const QuadratureNode& node : grid.nodes()) {
    const ComplexVector v = scs_closed_form(s, node.dir).amplitudes;
    kernel.noalias() += node.weight * (v * v.adjoint());
  }
  kernel *= d / kFourPi;

  ComplexVector psi = from.amplitudes;
  for (int k = 0; k < insertions; ++k) psi = kernel * psi;

  CompositionReport report;
  report.exact = overlap(to, from);
  report.composed = to.amplitudes.dot(psi);
  report.insertions = insertions;
  report.n_theta = grid.n_theta();
  report.n_phi = grid.n_phi();
  report.abs_error = std::abs(report.exact - report.composed);
  return report;
}

Complex path_amplitude(const PathSpec& path) {
  validate_path(path);
  Complex amp(1.0, 0.0);
  for (size_t i = 1; i < path.points.size(); ++i) {
    amp *= std::pow(half_overlap(path.points[i], path.points[i - 1]),
                    path.s.twice_s);
  }
  return amp;
}

double exact_phase(const PathSpec& path) {
  validate_path(path);
  double phase = 0.0;
  for (size_t i = 1; i < path.points.size(); ++i) {
    phase += path.s.twice_s *
             std::arg(half_overlap(path.points[i], path.points[i - 1]));
  }
  return phase;
}

double discrete_action(const PathSpec& path) {
  validate_path(path);
  double sum = 0.0;
  for (size_t i = 1; i < path.points.size(); ++i) {
    const double dphi =
        principal_branch(path.points[i].phi - path.points[i - 1].phi);
    sum += dphi * std::cos(path.points[i - 1].theta);
  }
  return path.s.value() * sum;
}

double phase_convention_gap(const PathSpec& path) {
  return exact_phase(path) + discrete_action(path) -
         path.s.value() * (path.points.back().phi - path.points.front().phi);
}

std::vector<CanonicalPoint> canonical_coordinates(const PathSpec& path) {
  std::vector<CanonicalPoint> out;
  out.reserve(path.points.size());
  for (const Direction& w : path.points) {
    out.push_back({w.phi, std::cos(w.theta)});
  }
  return out;
}

PathSpec latitude_loop(SpinQuantumNumber s, double theta, int n_steps) {
  if (n_steps < 2) {
    throw std::invalid_argument("latitude_loop: need at least two steps");
  }
  PathSpec path{s, {}};
  path.points.reserve(n_steps + 1);
  for (int i = 0; i <= n_steps; ++i) {
    path.points.emplace_back(theta, kTwoPi * i / n_steps);
  }
  return path;
}

}  // namespace spinmalus
