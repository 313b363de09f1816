#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace spinmalus {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kFourPi = 4.0 * kPi;

/// A point on the unit (Bloch) sphere. theta is the polar angle in [0, pi];
/// phi is the azimuth, folded into [0, 2pi) on construction. At the poles
/// phi is retained as stored, but every angle/overlap operation is invariant
/// under changes of phi there.
struct Direction {
  double theta;
  double phi;

  Direction(double theta_in, double phi_in);
};

/// Azimuth folded into [0, 2pi).
double normalize_phi(double phi);

/// Relative angle alpha in [0, pi], from
/// cos(alpha) = cos(t)cos(t') + sin(t)sin(t')cos(p - p').
/// The cosine is clamped into [-1, 1] before inversion.
double relative_angle(const Direction& a, const Direction& b);

/// Diametrically opposite point (pi - theta, phi + pi).
Direction antipode(const Direction& a);

/// Unit vector (sin t cos p, sin t sin p, cos t).
void to_cartesian(const Direction& a, double out[3]);

struct QuadratureNode {
  Direction dir;
  double weight;  // steradians
};

/// Product quadrature on the sphere: Gauss-Legendre in u = cos(theta)
/// tensored with a uniform azimuthal rule of weight 2pi/n_phi.
///
/// Exact (to roundoff) for integrands that are polynomials of degree
/// <= 2*n_theta - 1 in cos(theta) times a single Fourier mode of any order
/// not divisible by n_phi; products of modes are exact up to combined order
/// floor((n_phi - 1) / 2). Total weight is 4pi.
///
/// Node order is fixed: theta index outer (ascending in u), phi index inner.
class QuadratureGrid {
 public:
  QuadratureGrid(int n_theta, int n_phi, std::vector<QuadratureNode> nodes)
      : n_theta_(n_theta), n_phi_(n_phi), nodes_(std::move(nodes)) {}

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::span<const QuadratureNode> nodes() const { return nodes_; }

 private:
  int n_theta_;
  int n_phi_;
  std::vector<QuadratureNode> nodes_;
};

/// Builds the n_theta x n_phi product grid. Rejects non-positive counts.
QuadratureGrid build_grid(int n_theta, int n_phi);

namespace detail {

inline bool finite_value(double v) { return std::isfinite(v); }
inline bool finite_value(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

[[noreturn]] void throw_nonfinite(const Direction& at);
[[noreturn]] void throw_nonfinite(const Direction& at_a, const Direction& at_b);

}  // namespace detail

/// Weighted sum of f over the grid nodes, in fixed node order. A non-finite
/// value of f is reported by throwing, never summed silently.
template <typename F>
auto integrate(const QuadratureGrid& grid, F&& f) {
  using Value = std::invoke_result_t<F, const Direction&>;
  Value total{};
  for (const QuadratureNode& node : grid.nodes()) {
    Value v = f(node.dir);
    if (!detail::finite_value(v)) detail::throw_nonfinite(node.dir);
    total += node.weight * v;
  }
  return total;
}

/// Iterated integral over two sphere copies, same grid on each.
template <typename F>
auto integrate_two(const QuadratureGrid& grid, F&& f) {
  using Value = std::invoke_result_t<F, const Direction&, const Direction&>;
  Value total{};
  for (const QuadratureNode& na : grid.nodes()) {
    Value partial{};
    for (const QuadratureNode& nb : grid.nodes()) {
      Value v = f(na.dir, nb.dir);
      if (!detail::finite_value(v)) detail::throw_nonfinite(na.dir, nb.dir);
      partial += nb.weight * v;
    }
    total += na.weight * partial;
  }
  return total;
}

}  // namespace spinmalus
