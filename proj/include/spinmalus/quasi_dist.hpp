#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "spinmalus/spin_states.hpp"

namespace spinmalus {

/// Real quasi-probability weight in the diagonal coherent-state expansion
/// of a density matrix; normalized to 1 over the sphere (or the product of
/// spheres) but free to go negative.
///
/// Two-party distributions may carry, besides the smooth part, a singular
/// term delta_weight * delta2(omega_a + omega_b) that pins the second
/// direction to the antipode of the first; integrals reduce it to a single
/// sphere integral over antipodal pairs.
struct QuasiDistribution {
  int parties = 1;
  std::function<double(const Direction&)> smooth_one;
  std::function<double(const Direction&, const Direction&)> smooth_two;
  double delta_weight = 0.0;
  std::string name;
};

/// Smooth part at a point. Throws if the arity does not match parties.
double evaluate(const QuasiDistribution& p, const Direction& omega);
double evaluate(const QuasiDistribution& p, const Direction& omega_a,
                const Direction& omega_b);

/// Integral of the distribution (smooth plus reduced delta term) on the
/// given grid; 1 for anything normalized, up to quadrature error.
double normalization(const QuasiDistribution& p, const QuadratureGrid& grid);

/// rho = integral of P(omega) |omega><omega| (per-party spin s; two-party
/// distributions use s for both factors and a Kronecker-product projector).
DensityMatrix reconstruct_density(const QuasiDistribution& p,
                                  SpinQuantumNumber s,
                                  const QuadratureGrid& grid);

/// Minimum of the smooth part over the grid nodes augmented with the two
/// poles (Gauss-Legendre nodes are interior, and extrema of the built-ins
/// sit at the poles). argmin holds one Direction per party; delta_weight
/// is passed through for the caller's report.
struct NegativityReport {
  double min_value;
  std::vector<Direction> argmin;
  double delta_weight;
};

NegativityReport negativity_scan(const QuasiDistribution& p,
                                 const QuadratureGrid& grid);

/// Built-in distributions. Names in parentheses are the CLI identifiers.
QuasiDistribution uniform_half();           // (uniform)   1/4pi
QuasiDistribution p_plus();                 // (p-plus)    (1/4pi)(1 - 3cos t)
QuasiDistribution p_minus();                // (p-minus)   (1/4pi)(1 + 3cos t)
QuasiDistribution singlet_smooth();         // (pro1)      (1/4pi)^2 (1 + 9 cos a)
QuasiDistribution singlet_smooth_flipped(); // (pro1-flipped)  ... (1 - 9 cos a)
QuasiDistribution singlet_delta();          // (pro2) delta pairing minus uniform

/// Lookup by CLI identifier; throws std::invalid_argument for unknown names.
QuasiDistribution builtin_distribution(std::string_view name);
std::vector<std::string> builtin_distribution_names();

}  // namespace spinmalus
