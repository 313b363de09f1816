#include "spinmalus/classical_limit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinmalus {

namespace {

constexpr double kFdStep = 1e-6;

using Partial = std::function<double(double, double)>;

Partial partial_theta(const SphereFunction& f) {
  if (f.d_theta) return f.d_theta;
  auto value = f.value;
  return [value](double theta, double phi) {
    return (value(theta + kFdStep, phi) - value(theta - kFdStep, phi)) /
           (2.0 * kFdStep);
  };
}

Partial partial_phi(const SphereFunction& f) {
  if (f.d_phi) return f.d_phi;
  auto value = f.value;
  return [value](double theta, double phi) {
    return (value(theta, phi + kFdStep) - value(theta, phi - kFdStep)) /
           (2.0 * kFdStep);
  };
}

}  // namespace

double poisson_bracket(const SphereFunction& a, const SphereFunction& b,
                       SpinQuantumNumber s, const Direction& at) {
  const double sin_theta = std::sin(at.theta);
  if (sin_theta < 1e-8) {
    throw std::domain_error(
        "poisson_bracket: chart degenerates at the poles (sin theta = " +
        std::to_string(sin_theta) + ")");
  }
  const double at_th = partial_theta(a)(at.theta, at.phi);
  const double at_ph = partial_phi(a)(at.theta, at.phi);
  const double bt_th = partial_theta(b)(at.theta, at.phi);
  const double bt_ph = partial_phi(b)(at.theta, at.phi);
  return (at_ph * bt_th - at_th * bt_ph) / (s.value() * sin_theta);
}

Trajectory integrate_motion(const SphereFunction& hamiltonian,
                            SpinQuantumNumber s, const Direction& initial,
                            double t_end, double step) {
  if (!(step > 0.0) || !(t_end > 0.0)) {
    throw std::invalid_argument("integrate_motion: step and t_end must be > 0");
  }
  const long n_steps = std::llround(t_end / step);
  if (n_steps < 1) {
    throw std::invalid_argument("integrate_motion: t_end shorter than a step");
  }
  if (s.twice_s == 0) {
    throw std::invalid_argument("integrate_motion: s must be positive");
  }

  const Partial d_theta = partial_theta(hamiltonian);
  const Partial d_phi = partial_phi(hamiltonian);
  const double sv = s.value();

  struct Rate {
    double dq, dp;
  };
  auto rate = [&](double q, double p, double t) -> Rate {
    if (std::abs(p) > 1.0 + 1e-9) {
      throw std::runtime_error(
          "integrate_motion: |cos theta| = " + std::to_string(std::abs(p)) +
          " > 1 at t = " + std::to_string(t));
    }
    const double pc = std::clamp(p, -1.0, 1.0);
    const double sin_theta = std::sqrt(1.0 - pc * pc);
    const double theta = std::acos(pc);
    const double dq = d_theta(theta, q) / (sv * sin_theta);
    const double dp = d_phi(theta, q) / sv;
    if (!std::isfinite(dq) || !std::isfinite(dp)) {
      throw std::runtime_error(
          "integrate_motion: chart broke down (pole reached?) at t = " +
          std::to_string(t));
    }
    return {dq, dp};
  };

  Trajectory traj;
  traj.step = step;
  traj.used_finite_differences = !(hamiltonian.d_theta && hamiltonian.d_phi);
  traj.samples.reserve(n_steps + 1);

  double q = initial.phi;
  double p = std::cos(initial.theta);
  auto record = [&](double t) {
    const double theta = std::acos(std::clamp(p, -1.0, 1.0));
    traj.samples.push_back({t, theta, q, hamiltonian.value(theta, q)});
  };
  record(0.0);
  for (long i = 0; i < n_steps; ++i) {
    const double t = i * step;
    const Rate k1 = rate(q, p, t);
    const Rate k2 = rate(q + 0.5 * step * k1.dq, p + 0.5 * step * k1.dp,
                         t + 0.5 * step);
    const Rate k3 = rate(q + 0.5 * step * k2.dq, p + 0.5 * step * k2.dp,
                         t + 0.5 * step);
    const Rate k4 = rate(q + step * k3.dq, p + step * k3.dp, t + step);
    q += step * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq) / 6.0;
    p += step * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp) / 6.0;
    record((i + 1) * step);
  }
  return traj;
}

SphereFunction uniform_field_hamiltonian(double omega0, SpinQuantumNumber s) {
  const double scale = omega0 * s.value();
  SphereFunction h;
  h.value = [scale](double theta, double) { return scale * std::cos(theta); };
  h.d_theta = [scale](double theta, double) {
    return -scale * std::sin(theta);
  };
  h.d_phi = [](double, double) { return 0.0; };
  h.name = "uniform-field";
  return h;
}

SphereFunction transverse_field_hamiltonian(double omega0,
                                            SpinQuantumNumber s) {
  const double scale = omega0 * s.value();
  SphereFunction h;
  h.value = [scale](double theta, double phi) {
    return scale * std::sin(theta) * std::cos(phi);
  };
  h.d_theta = [scale](double theta, double phi) {
    return scale * std::cos(theta) * std::cos(phi);
  };
  h.d_phi = [scale](double theta, double phi) {
    return -scale * std::sin(theta) * std::sin(phi);
  };
  h.name = "transverse-field";
  return h;
}

double transmission_width(SpinQuantumNumber s, double level) {
  if (s.twice_s < 1) {
    throw std::invalid_argument("transmission_width: s must be positive");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("transmission_width: level must be in (0, 1)");
  }
  return 2.0 * std::acos(std::pow(level, 1.0 / (2.0 * s.twice_s)));
}

std::vector<double> concentration_profile(SpinQuantumNumber s,
                                          const std::vector<double>& alphas) {
  std::vector<double> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    if (!(alpha >= 0.0 && alpha <= kPi)) {
      throw std::invalid_argument("concentration_profile: alpha " +
                                  std::to_string(alpha) +
                                  " outside [0, pi]");
    }
    out.push_back(std::pow(std::cos(0.5 * alpha), 2.0 * s.twice_s));
  }
  return out;
}

}  // namespace spinmalus
