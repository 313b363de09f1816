#include "spinmalus/malus.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinmalus {

namespace {

template <typename Eval>
ExperimentResult with_refinement(const QuadratureGrid& grid, Eval&& eval) {
  ExperimentResult r;
  r.n_theta = grid.n_theta();
  r.n_phi = grid.n_phi();
  r.value = eval(grid);
  const QuadratureGrid fine = build_grid(2 * grid.n_theta(), 2 * grid.n_phi());
  r.estimated_error = std::abs(r.value - eval(fine));
  return r;
}

double checked_transmission(const Transmission& t, const Direction& setting,
                            const Direction& lambda) {
  const double v = t(setting, lambda);
  if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
    throw std::domain_error("transmission value " + std::to_string(v) +
                            " outside [0, 1]");
  }
  return v;
}

}  // namespace

double stern_gerlach_transmission(const Direction& setting,
                                  const Direction& lambda) {
  const double c = std::cos(0.5 * relative_angle(setting, lambda));
  return c * c;
}

ExperimentResult classical_malus(const QuasiDistribution& p_cl,
                                 const Direction& analyzer,
                                 const QuadratureGrid& grid) {
  if (p_cl.parties != 1) {
    throw std::invalid_argument("classical_malus: needs a one-party density");
  }
  return with_refinement(grid, [&](const QuadratureGrid& g) {
    return integrate(g, [&](const Direction& w) {
      const double density = p_cl.smooth_one(w);
      if (density < -1e-12) {
        throw std::domain_error(
            "classical_malus: density is negative (" +
            std::to_string(density) + " at theta=" + std::to_string(w.theta) +
            "); a classical distribution must be nonnegative");
      }
      const double c = std::cos(relative_angle(w, analyzer));
      return density * c * c;
    });
  });
}

ExperimentResult quantum_malus_average(const QuasiDistribution& p,
                                       SpinQuantumNumber s,
                                       const Direction& analyzer,
                                       const QuadratureGrid& grid) {
  if (p.parties != 1) {
    throw std::invalid_argument(
        "quantum_malus_average: needs a one-party distribution");
  }
  return with_refinement(grid, [&](const QuadratureGrid& g) {
    return integrate(g, [&](const Direction& w) {
      return p.smooth_one(w) * malus_probability(s, w, analyzer);
    });
  });
}

ExperimentResult hidden_variable_probability(const HiddenVariableModel& model,
                                             const Direction& a,
                                             const Direction& b,
                                             const QuadratureGrid& grid) {
  const QuasiDistribution& p = model.distribution;
  if (p.parties != 2) {
    throw std::invalid_argument(
        "hidden_variable_probability: needs a two-party distribution");
  }
  return with_refinement(grid, [&](const QuadratureGrid& g) {
    double total = integrate_two(g, [&](const Direction& la,
                                        const Direction& lb) {
      return p.smooth_two(la, lb) *
             checked_transmission(model.transmission_a, a, la) *
             checked_transmission(model.transmission_b, b, lb);
    });
    if (p.delta_weight != 0.0) {
      total += p.delta_weight * integrate(g, [&](const Direction& la) {
        return checked_transmission(model.transmission_a, a, la) *
               checked_transmission(model.transmission_b, b, antipode(la));
      });
    }
    return total;
  });
}

ExperimentResult joint_probability(const QuasiDistribution& p,
                                   const Direction& a, const Direction& b,
                                   const QuadratureGrid& grid) {
  HiddenVariableModel model{p, stern_gerlach_transmission,
                            stern_gerlach_transmission};
  return hidden_variable_probability(model, a, b, grid);
}

double quantum_joint_oracle(const Direction& a, const Direction& b) {
  const SpinQuantumNumber half(1);
  const SpinState psi = singlet_state();
  const DensityMatrix pi = tensor(projector(scs_closed_form(half, a)),
                                  projector(scs_closed_form(half, b)));
  const Complex v = psi.amplitudes.dot(pi.entries * psi.amplitudes);
  return v.real();
}

double correlator(
    const std::function<double(const Direction&, const Direction&)>& joint,
    const Direction& x, const Direction& y) {
  const Direction xb = antipode(x);
  const Direction yb = antipode(y);
  return joint(x, y) + joint(xb, yb) - joint(x, yb) - joint(xb, y);
}

double chsh_value(
    const std::function<double(const Direction&, const Direction&)>& joint,
    const Direction& a, const Direction& a_prime, const Direction& b,
    const Direction& b_prime) {
  return correlator(joint, a, b) - correlator(joint, a, b_prime) +
         correlator(joint, a_prime, b) + correlator(joint, a_prime, b_prime);
}

ChshSettings standard_chsh_settings() {
  return ChshSettings{Direction(0.0, 0.0), Direction(0.5 * kPi, 0.0),
                      Direction(0.75 * kPi, kPi), Direction(0.25 * kPi, kPi)};
}

}  // namespace spinmalus
