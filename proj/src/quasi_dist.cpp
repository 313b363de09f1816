#include "spinmalus/quasi_dist.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinmalus {

namespace {

void require_parties(const QuasiDistribution& p, int n, const char* op) {
  if (p.parties != n) {
    throw std::invalid_argument(std::string(op) + ": distribution '" + p.name +
                                "' has " + std::to_string(p.parties) +
                                " parties, expected " + std::to_string(n));
  }
}

}  // namespace

double evaluate(const QuasiDistribution& p, const Direction& omega) {
  require_parties(p, 1, "evaluate");
  return p.smooth_one(omega);
}

double evaluate(const QuasiDistribution& p, const Direction& omega_a,
                const Direction& omega_b) {
  require_parties(p, 2, "evaluate");
  return p.smooth_two(omega_a, omega_b);
}

double normalization(const QuasiDistribution& p, const QuadratureGrid& grid) {
  if (p.parties == 1) {
    return integrate(grid, [&](const Direction& w) { return p.smooth_one(w); });
  }
  double total = integrate_two(grid, [&](const Direction& wa,
                                         const Direction& wb) {
    return p.smooth_two(wa, wb);
  });
  if (p.delta_weight != 0.0) {
    total += p.delta_weight *
             integrate(grid, [](const Direction&) { return 1.0; });
  }
  return total;
}

DensityMatrix reconstruct_density(const QuasiDistribution& p,
                                  SpinQuantumNumber s,
                                  const QuadratureGrid& grid) {
  const int d = s.dimension();
  DensityMatrix rho;
  if (p.parties == 1) {
    rho.dims = {d};
    rho.entries = ComplexMatrix::Zero(d, d);
    for (const QuadratureNode& node : grid.nodes()) {
      const ComplexVector v = scs_closed_form(s, node.dir).amplitudes;
      rho.entries.noalias() +=
          (node.weight * p.smooth_one(node.dir)) * (v * v.adjoint());
    }
    return rho;
  }

  require_parties(p, 2, "reconstruct_density");
  rho.dims = {d, d};
  rho.entries = ComplexMatrix::Zero(d * d, d * d);
  std::vector<ComplexVector> states;
  states.reserve(grid.nodes().size());
  for (const QuadratureNode& node : grid.nodes()) {
    states.push_back(scs_closed_form(s, node.dir).amplitudes);
  }
  ComplexVector pair(d * d);
  auto accumulate = [&](const ComplexVector& va, const ComplexVector& vb,
                        double coeff) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) pair(i * d + j) = va(i) * vb(j);
    rho.entries.noalias() += coeff * (pair * pair.adjoint());
  };

  const auto nodes = grid.nodes();
  for (size_t ia = 0; ia < nodes.size(); ++ia) {
    for (size_t ib = 0; ib < nodes.size(); ++ib) {
      const double w = nodes[ia].weight * nodes[ib].weight *
                       p.smooth_two(nodes[ia].dir, nodes[ib].dir);
      if (w != 0.0) accumulate(states[ia], states[ib], w);
    }
  }
  if (p.delta_weight != 0.0) {
    for (const QuadratureNode& node : nodes) {
      const ComplexVector vb =
          scs_closed_form(s, antipode(node.dir)).amplitudes;
      accumulate(scs_closed_form(s, node.dir).amplitudes, vb,
                 p.delta_weight * node.weight);
    }
  }
  return rho;
}

NegativityReport negativity_scan(const QuasiDistribution& p,
                                 const QuadratureGrid& grid) {
  std::vector<Direction> points;
  points.reserve(grid.nodes().size() + 2);
  points.emplace_back(0.0, 0.0);
  points.emplace_back(kPi, 0.0);
  for (const QuadratureNode& node : grid.nodes()) points.push_back(node.dir);

  NegativityReport report{0.0, {}, p.delta_weight};
  bool first = true;
  if (p.parties == 1) {
    for (const Direction& w : points) {
      const double v = p.smooth_one(w);
      if (first || v < report.min_value) {
        report.min_value = v;
        report.argmin = {w};
        first = false;
      }
    }
  } else {
    for (const Direction& wa : points) {
      for (const Direction& wb : points) {
        const double v = p.smooth_two(wa, wb);
        if (first || v < report.min_value) {
          report.min_value = v;
          report.argmin = {wa, wb};
          first = false;
        }
      }
    }
  }
  return report;
}

QuasiDistribution uniform_half() {
  QuasiDistribution p;
  p.parties = 1;
  p.smooth_one = [](const Direction&) { return 1.0 / kFourPi; };
  p.name = "uniform";
  return p;
}

QuasiDistribution p_plus() {
  QuasiDistribution p;
  p.parties = 1;
  p.smooth_one = [](const Direction& w) {
    return (1.0 - 3.0 * std::cos(w.theta)) / kFourPi;
  };
  p.name = "p-plus";
  return p;
}

QuasiDistribution p_minus() {
  QuasiDistribution p;
  p.parties = 1;
  p.smooth_one = [](const Direction& w) {
    return (1.0 + 3.0 * std::cos(w.theta)) / kFourPi;
  };
  p.name = "p-minus";
  return p;
}

QuasiDistribution singlet_smooth() {
  QuasiDistribution p;
  p.parties = 2;
  p.smooth_two = [](const Direction& wa, const Direction& wb) {
    return (1.0 + 9.0 * std::cos(relative_angle(wa, wb))) /
           (kFourPi * kFourPi);
  };
  p.name = "pro1";
  return p;
}

QuasiDistribution singlet_smooth_flipped() {
  QuasiDistribution p;
  p.parties = 2;
  p.smooth_two = [](const Direction& wa, const Direction& wb) {
    return (1.0 - 9.0 * std::cos(relative_angle(wa, wb))) /
           (kFourPi * kFourPi);
  };
  p.name = "pro1-flipped";
  return p;
}

QuasiDistribution singlet_delta() {
  QuasiDistribution p;
  p.parties = 2;
  p.smooth_two = [](const Direction&, const Direction&) {
    return -2.0 / (kFourPi * kFourPi);
  };
  p.delta_weight = 3.0 / kFourPi;
  p.name = "pro2";
  return p;
}

QuasiDistribution builtin_distribution(std::string_view name) {
  if (name == "uniform") return uniform_half();
  if (name == "p-plus") return p_plus();
  if (name == "p-minus") return p_minus();
  if (name == "pro1") return singlet_smooth();
  if (name == "pro1-flipped") return singlet_smooth_flipped();
  if (name == "pro2") return singlet_delta();
  throw std::invalid_argument("unknown distribution '" + std::string(name) +
                              "'");
}

std::vector<std::string> builtin_distribution_names() {
  return {"uniform", "p-plus", "p-minus", "pro1", "pro1-flipped", "pro2"};
}

}  // namespace spinmalus
