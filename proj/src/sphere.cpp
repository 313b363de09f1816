#include "spinmalus/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinmalus {

namespace {

// Gauss-Legendre nodes and weights on [-1, 1]: Newton iteration on the
// three-term Legendre recurrence, Chebyshev points as initial guesses.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double deriv = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p_curr = 1.0;
      double p_prev = 0.0;
      for (int j = 0; j < n; ++j) {
        double p_before = p_prev;
        p_prev = p_curr;
        p_curr = ((2.0 * j + 1.0) * z * p_prev - j * p_before) / (j + 1.0);
      }
      deriv = n * (z * p_curr - p_prev) / (z * z - 1.0);
      double delta = p_curr / deriv;
      z -= delta;
      if (std::abs(delta) < 1e-15) break;
    }
    // One clean evaluation at the converged node for the weight.
    double p_curr = 1.0;
    double p_prev = 0.0;
    for (int j = 0; j < n; ++j) {
      double p_before = p_prev;
      p_prev = p_curr;
      p_curr = ((2.0 * j + 1.0) * z * p_prev - j * p_before) / (j + 1.0);
    }
    deriv = n * (z * p_curr - p_prev) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * deriv * deriv);
  }
}

}  // namespace

Direction::Direction(double theta_in, double phi_in) {
  if (!std::isfinite(theta_in) || !std::isfinite(phi_in)) {
    throw std::invalid_argument("Direction: angles must be finite");
  }
  if (theta_in < -1e-12 || theta_in > kPi + 1e-12) {
    throw std::invalid_argument("Direction: theta " + std::to_string(theta_in) +
                                " outside [0, pi]");
  }
  theta = std::clamp(theta_in, 0.0, kPi);
  phi = normalize_phi(phi_in);
}

double normalize_phi(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double relative_angle(const Direction& a, const Direction& b) {
  double c = std::cos(a.theta) * std::cos(b.theta) +
             std::sin(a.theta) * std::sin(b.theta) * std::cos(a.phi - b.phi);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

Direction antipode(const Direction& a) {
  return Direction(kPi - a.theta, a.phi + kPi);
}

void to_cartesian(const Direction& a, double out[3]) {
  out[0] = std::sin(a.theta) * std::cos(a.phi);
  out[1] = std::sin(a.theta) * std::sin(a.phi);
  out[2] = std::cos(a.theta);
}

QuadratureGrid build_grid(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) {
    throw std::invalid_argument("build_grid: node counts must be positive");
  }
  std::vector<double> u, wu;
  gauss_legendre(n_theta, u, wu);

  std::vector<QuadratureNode> nodes;
  nodes.reserve(static_cast<size_t>(n_theta) * n_phi);
  const double w_phi = kTwoPi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(std::clamp(u[i], -1.0, 1.0));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = kTwoPi * j / n_phi;
      nodes.push_back({Direction(theta, phi), wu[i] * w_phi});
    }
  }
  return QuadratureGrid(n_theta, n_phi, std::move(nodes));
}

namespace detail {

void throw_nonfinite(const Direction& at) {
  throw std::runtime_error("integrate: non-finite integrand value at theta=" +
                           std::to_string(at.theta) +
                           " phi=" + std::to_string(at.phi));
}

void throw_nonfinite(const Direction& at_a, const Direction& at_b) {
  throw std::runtime_error(
      "integrate_two: non-finite integrand value at theta_a=" +
      std::to_string(at_a.theta) + " phi_a=" + std::to_string(at_a.phi) +
      " theta_b=" + std::to_string(at_b.theta) +
      " phi_b=" + std::to_string(at_b.phi));
}

}  // namespace detail

}  // namespace spinmalus
