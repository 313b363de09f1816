#include "spinmalus/spin_states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace spinmalus {

SpinQuantumNumber::SpinQuantumNumber(int twice_s_in) : twice_s(twice_s_in) {
  if (twice_s < 0) {
    throw std::invalid_argument("SpinQuantumNumber: 2s must be >= 0, got " +
                                std::to_string(twice_s));
  }
}

int DensityMatrix::total_dim() const {
  int d = 1;
  for (int k : dims) d *= k;
  return d;
}

std::pair<ComplexMatrix, ComplexMatrix> ladder_operators(SpinQuantumNumber s) {
  const int d = s.dimension();
  const double sv = s.value();
  ComplexMatrix plus = ComplexMatrix::Zero(d, d);
  for (int k = 0; k + 1 < d; ++k) {
    const double m = k - sv;  // component k holds m = k - s
    plus(k + 1, k) = std::sqrt(sv * (sv + 1.0) - m * (m + 1.0));
  }
  ComplexMatrix minus = plus.adjoint();
  return {plus, minus};
}

ComplexMatrix spin_z(SpinQuantumNumber s) {
  const int d = s.dimension();
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) z(k, k) = k - s.value();
  return z;
}

ComplexMatrix scs_rotation(SpinQuantumNumber s, const Direction& omega) {
  auto [plus, minus] = ladder_operators(s);
  const Complex tau =
      0.5 * omega.theta * std::exp(Complex(0.0, -omega.phi));
  ComplexMatrix generator = tau * plus - std::conj(tau) * minus;
  return generator.exp();
}

SpinState scs_exponential(SpinQuantumNumber s, const Direction& omega) {
  SpinState state;
  state.parties = {s};
  state.amplitudes = scs_rotation(s, omega).col(0);
  return state;
}

SpinState scs_closed_form(SpinQuantumNumber s, const Direction& omega) {
  const int n = s.twice_s;
  const double c = std::cos(0.5 * omega.theta);
  const double si = std::sin(0.5 * omega.theta);

  SpinState state;
  state.parties = {s};
  state.amplitudes = ComplexVector(n + 1);
  double binom = 1.0;  // binom(2s, k), updated multiplicatively
  for (int k = 0; k <= n; ++k) {
    const double magnitude =
        std::sqrt(binom) * std::pow(si, k) * std::pow(c, n - k);
    state.amplitudes(k) =
        magnitude * std::exp(Complex(0.0, -k * omega.phi));
    if (k < n) binom *= static_cast<double>(n - k) / (k + 1);
  }
  return state;
}

Complex overlap(const SpinState& a, const SpinState& b) {
  if (a.parties.size() != b.parties.size()) {
    throw std::invalid_argument("overlap: states have different party counts");
  }
  for (size_t i = 0; i < a.parties.size(); ++i) {
    if (a.parties[i].twice_s != b.parties[i].twice_s) {
      throw std::invalid_argument("overlap: party " + std::to_string(i) +
                                  " dimensions differ");
    }
  }
  return a.amplitudes.dot(b.amplitudes);
}

double malus_probability(SpinQuantumNumber s, const Direction& omega,
                         const Direction& omega_prime) {
  const double alpha = relative_angle(omega, omega_prime);
  return std::pow(std::cos(0.5 * alpha), 2.0 * s.twice_s);
}

DensityMatrix projector(const SpinState& x) {
  const double norm = x.amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-8) {
    throw std::invalid_argument("projector: state norm " +
                                std::to_string(norm) + " is not 1");
  }
  DensityMatrix rho;
  for (const SpinQuantumNumber& p : x.parties) rho.dims.push_back(p.dimension());
  rho.entries = x.amplitudes * x.amplitudes.adjoint();
  return rho;
}

SpinState tensor(const SpinState& a, const SpinState& b) {
  SpinState out;
  out.parties = a.parties;
  out.parties.insert(out.parties.end(), b.parties.begin(), b.parties.end());
  out.amplitudes = Eigen::kroneckerProduct(a.amplitudes, b.amplitudes);
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  DensityMatrix out;
  out.dims = a.dims;
  out.dims.insert(out.dims.end(), b.dims.begin(), b.dims.end());
  out.entries = Eigen::kroneckerProduct(a.entries, b.entries);
  return out;
}

SpinState singlet_state() {
  SpinState psi;
  psi.parties = {SpinQuantumNumber(1), SpinQuantumNumber(1)};
  psi.amplitudes = ComplexVector::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  psi.amplitudes(1) = -r;  // |m_a=-1/2, m_b=+1/2>
  psi.amplitudes(2) = r;   // |m_a=+1/2, m_b=-1/2>
  return psi;
}

double resolution_of_identity_defect(SpinQuantumNumber s,
                                     const QuadratureGrid& grid) {
  const int d = s.dimension();
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  for (const QuadratureNode& node : grid.nodes()) {
    const ComplexVector v = scs_closed_form(s, node.dir).amplitudes;
    acc.noalias() += node.weight * (v * v.adjoint());
  }
  acc *= d / kFourPi;
  return (acc - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const DensityMatrix& rho) {
  return (rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff();
}

double trace_defect(const DensityMatrix& rho) {
  return std::abs(rho.entries.trace() - Complex(1.0, 0.0));
}

double min_eigenvalue(const DensityMatrix& rho) {
  ComplexMatrix sym = 0.5 * (rho.entries + rho.entries.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace spinmalus
