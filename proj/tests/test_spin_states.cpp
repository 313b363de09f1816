#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "spinmalus/spin_states.hpp"
#include "test_support.hpp"

using namespace spinmalus;
using test_support::partial_trace_first;
using test_support::partial_trace_second;
using test_support::random_direction;

namespace {

double entrywise_distance(const ComplexVector& a, const ComplexVector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double entrywise_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("SpinQuantumNumber rejects negative 2s") {
  CHECK_THROWS_AS(SpinQuantumNumber(-1), std::invalid_argument);
  CHECK(SpinQuantumNumber(3).dimension() == 4);
  CHECK(SpinQuantumNumber(3).value() == doctest::Approx(1.5));
}

TEST_CASE("ladder operators satisfy the su(2) algebra") {
  SUBCASE("spin 1/2") {
    auto [plus, minus] = ladder_operators(SpinQuantumNumber(1));
    CHECK(plus(1, 0).real() == doctest::Approx(1.0));
    CHECK(plus(0, 1) == Complex(0.0, 0.0));
    CHECK(minus(0, 1).real() == doctest::Approx(1.0));
  }
  SUBCASE("spin 1 matrix elements") {
    auto [plus, minus] = ladder_operators(SpinQuantumNumber(2));
    CHECK(plus(1, 0).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(plus(2, 1).real() == doctest::Approx(std::sqrt(2.0)));
  }
  SUBCASE("[S+, S-] = 2 Sz for spin 3/2") {
    const SpinQuantumNumber s(3);
    auto [plus, minus] = ladder_operators(s);
    const ComplexMatrix comm = plus * minus - minus * plus;
    CHECK(entrywise_distance(comm, ComplexMatrix(2.0 * spin_z(s))) < 1e-14);
  }
}

TEST_CASE("coherent states at the poles are the weight states") {
  const SpinState down = scs_closed_form(SpinQuantumNumber(4), Direction(0.0, 1.3));
  CHECK(std::abs(down.amplitudes(0) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(down.amplitudes.tail(4).cwiseAbs().maxCoeff() < 1e-15);

  const SpinState up = scs_closed_form(SpinQuantumNumber(2), Direction(kPi, 0.7));
  CHECK(std::abs(up.amplitudes(2)) == doctest::Approx(1.0));
  // theta = pi with phase e^{-i 2s phi}.
  CHECK(up.amplitudes(2).real() == doctest::Approx(std::cos(2.0 * 0.7)));
  CHECK(up.amplitudes(2).imag() == doctest::Approx(-std::sin(2.0 * 0.7)));
}

TEST_CASE("closed-form amplitudes at the equator") {
  const SpinState x = scs_closed_form(SpinQuantumNumber(4), Direction(kPi / 2.0, 0.0));
  const double expected[] = {1.0, 2.0, std::sqrt(6.0), 2.0, 1.0};
  for (int k = 0; k < 5; ++k) {
    CHECK(x.amplitudes(k).real() == doctest::Approx(expected[k] / 4.0));
    CHECK(x.amplitudes(k).imag() == doctest::Approx(0.0));
  }
}

TEST_CASE("spin-1/2 closed form is (cos(t/2), e^{-i phi} sin(t/2))") {
  const Direction w(1.1, 2.3);
  const SpinState x = scs_closed_form(SpinQuantumNumber(1), w);
  CHECK(std::abs(x.amplitudes(0) - Complex(std::cos(0.55), 0.0)) < 1e-15);
  CHECK(std::abs(x.amplitudes(1) -
                 std::sin(0.55) * std::exp(Complex(0.0, -2.3))) < 1e-15);
}

TEST_CASE("exponential and closed-form constructors agree") {
  SUBCASE("pinned points") {
    const SpinState a = scs_exponential(SpinQuantumNumber(1), Direction(kPi / 2.0, 0.0));
    CHECK(std::abs(a.amplitudes(0) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-14);
    CHECK(std::abs(a.amplitudes(1) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-14);

    const SpinState b = scs_exponential(SpinQuantumNumber(2), Direction(kPi, 0.4));
    CHECK(std::abs(b.amplitudes(2) - std::exp(Complex(0.0, -0.8))) < 1e-13);
  }
  SUBCASE("random sweep up to s = 25/2") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> spin(1, 25);
    for (int i = 0; i < 120; ++i) {
      const SpinQuantumNumber s(spin(rng));
      const Direction w = random_direction(rng);
      const SpinState e = scs_exponential(s, w);
      const SpinState c = scs_closed_form(s, w);
      CAPTURE(s.twice_s);
      CAPTURE(w.theta);
      CAPTURE(w.phi);
      CHECK(entrywise_distance(e.amplitudes, c.amplitudes) < 1e-12);
      CHECK(c.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("coherent-state Bloch vector is (sin cos, sin sin, -cos)") {
  const SpinQuantumNumber s(1);
  auto [plus, minus] = ladder_operators(s);
  const ComplexMatrix sx = 0.5 * (plus + minus);
  const ComplexMatrix sy = Complex(0.0, -0.5) * (plus - minus);
  const ComplexMatrix sz = spin_z(s);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    const Direction w = random_direction(rng);
    const ComplexVector v = scs_closed_form(s, w).amplitudes;
    const double ex = v.dot(sx * v).real();
    const double ey = v.dot(sy * v).real();
    const double ez = v.dot(sz * v).real();
    CHECK(ex == doctest::Approx(0.5 * std::sin(w.theta) * std::cos(w.phi))
                    .epsilon(1e-12));
    CHECK(ey == doctest::Approx(0.5 * std::sin(w.theta) * std::sin(w.phi))
                    .epsilon(1e-12));
    CHECK(ez == doctest::Approx(-0.5 * std::cos(w.theta)).epsilon(1e-12));
  }
}

TEST_CASE("overlap is the 2s-th power of the spin-1/2 overlap") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> spin(1, 20);
  for (int i = 0; i < 100; ++i) {
    const SpinQuantumNumber s(spin(rng));
    const Direction a = random_direction(rng);
    const Direction b = random_direction(rng);
    const Complex z =
        std::cos(0.5 * a.theta) * std::cos(0.5 * b.theta) +
        std::exp(Complex(0.0, a.phi - b.phi)) * std::sin(0.5 * a.theta) *
            std::sin(0.5 * b.theta);
    const Complex full = overlap(scs_closed_form(s, a), scs_closed_form(s, b));
    CHECK(std::abs(full - std::pow(z, s.twice_s)) < 1e-12);
  }
}

TEST_CASE("overlap validates party structure") {
  const SpinState a = scs_closed_form(SpinQuantumNumber(1), Direction(0.3, 0.0));
  const SpinState b = scs_closed_form(SpinQuantumNumber(2), Direction(0.3, 0.0));
  CHECK_THROWS_AS(overlap(a, b), std::invalid_argument);
  CHECK_THROWS_AS(overlap(a, tensor(a, a)), std::invalid_argument);
}

TEST_CASE("Malus law cos^(4s)(alpha/2)") {
  const Direction z(0.0, 0.0);
  const Direction x(kPi / 2.0, 0.0);
  CHECK(malus_probability(SpinQuantumNumber(1), z, z) == doctest::Approx(1.0));
  CHECK(malus_probability(SpinQuantumNumber(1), z, x) == doctest::Approx(0.5));
  CHECK(malus_probability(SpinQuantumNumber(4), z, x) ==
        doctest::Approx(1.0 / 16.0));
  CHECK(malus_probability(SpinQuantumNumber(1), z, antipode(z)) ==
        doctest::Approx(0.0));

  SUBCASE("equals the overlap modulus squared") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> spin(1, 30);
    for (int i = 0; i < 150; ++i) {
      const SpinQuantumNumber s(spin(rng));
      const Direction a = random_direction(rng);
      const Direction b = random_direction(rng);
      const double amp2 =
          std::norm(overlap(scs_closed_form(s, a), scs_closed_form(s, b)));
      CHECK(std::abs(amp2 - malus_probability(s, a, b)) < 1e-12);
    }
  }
  SUBCASE("gauge invariant at the poles") {
    const SpinQuantumNumber s(5);
    const Direction probe(1.2, 0.4);
    const double ref = malus_probability(s, Direction(0.0, 0.0), probe);
    for (double phi : {0.7, 2.9, 5.5}) {
      CHECK(malus_probability(s, Direction(0.0, phi), probe) ==
            doctest::Approx(ref));
    }
  }
}

TEST_CASE("projector returns |x><x| and insists on unit norm") {
  const DensityMatrix pole =
      projector(scs_closed_form(SpinQuantumNumber(1), Direction(0.0, 0.0)));
  CHECK(pole.entries(0, 0).real() == doctest::Approx(1.0));
  CHECK(std::abs(pole.entries(1, 1)) < 1e-30);
  CHECK(trace_defect(pole) < 1e-14);

  SpinState stretched = scs_closed_form(SpinQuantumNumber(2), Direction(0.9, 0.2));
  stretched.amplitudes *= 1.1;
  CHECK_THROWS_AS(projector(stretched), std::invalid_argument);

  SUBCASE("idempotent for any coherent state") {
    const DensityMatrix rho =
        projector(scs_closed_form(SpinQuantumNumber(3), Direction(2.0, 4.0)));
    CHECK(entrywise_distance(ComplexMatrix(rho.entries * rho.entries),
                             rho.entries) < 1e-14);
    CHECK(hermiticity_defect(rho) < 1e-15);
    CHECK(min_eigenvalue(rho) > -1e-14);
  }
}

TEST_CASE("tensor products use row-major party order") {
  SpinState plus;
  plus.parties = {SpinQuantumNumber(1)};
  plus.amplitudes = ComplexVector::Zero(2);
  plus.amplitudes(1) = 1.0;
  SpinState minus;
  minus.parties = {SpinQuantumNumber(1)};
  minus.amplitudes = ComplexVector::Zero(2);
  minus.amplitudes(0) = 1.0;

  const SpinState pm = tensor(plus, minus);
  REQUIRE(pm.amplitudes.size() == 4);
  CHECK(std::abs(pm.amplitudes(2) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(pm.parties.size() == 2);
}

TEST_CASE("singlet state is anticorrelated and rotation invariant") {
  const SpinState psi = singlet_state();
  CHECK(psi.amplitudes.norm() == doctest::Approx(1.0));
  CHECK(psi.amplitudes(1).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(psi.amplitudes(2).real() == doctest::Approx(1.0 / std::sqrt(2.0)));

  const ComplexMatrix sigma_z = 2.0 * spin_z(SpinQuantumNumber(1));
  const ComplexMatrix zz = Eigen::kroneckerProduct(sigma_z, sigma_z).eval();
  CHECK(psi.amplitudes.dot(zz * psi.amplitudes).real() ==
        doctest::Approx(-1.0));

  SUBCASE("partial traces are maximally mixed") {
    const DensityMatrix rho = projector(psi);
    const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
    CHECK(entrywise_distance(partial_trace_second(rho), half) < 1e-15);
    CHECK(entrywise_distance(partial_trace_first(rho), half) < 1e-15);
  }

  SUBCASE("invariant under equal rotations of both parties") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 25; ++i) {
      const Direction w = random_direction(rng);
      const ComplexMatrix u = scs_rotation(SpinQuantumNumber(1), w);
      const ComplexMatrix uu = Eigen::kroneckerProduct(u, u).eval();
      const Complex c = psi.amplitudes.dot(uu * psi.amplitudes);
      CHECK(std::abs(std::abs(c) - 1.0) < 1e-13);
    }
  }
}

TEST_CASE("coherent states resolve the identity on matched grids") {
  CHECK(resolution_of_identity_defect(SpinQuantumNumber(1), build_grid(2, 3)) <
        1e-14);
  // Degree 2s = 1 in cos(theta) and modes up to 1 need only (1, 2).
  CHECK(resolution_of_identity_defect(SpinQuantumNumber(1), build_grid(1, 2)) <
        1e-14);
  CHECK(resolution_of_identity_defect(SpinQuantumNumber(2), build_grid(3, 3)) <
        1e-14);
  CHECK(resolution_of_identity_defect(SpinQuantumNumber(10),
                                      build_grid(11, 11)) < 1e-12);

  SUBCASE("under-resolved grids leave an order-one defect") {
    const double defect =
        resolution_of_identity_defect(SpinQuantumNumber(10), build_grid(3, 3));
    CHECK(defect > 0.5);
    CHECK(defect < 1.0);
  }

  SUBCASE("random spins with n = 2s + 1") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> spin(1, 16);
    for (int i = 0; i < 20; ++i) {
      const SpinQuantumNumber s(spin(rng));
      const int n = s.twice_s + 1;
      CAPTURE(s.twice_s);
      CHECK(resolution_of_identity_defect(s, build_grid(n, n)) < 1e-10);
    }
  }
}

TEST_CASE("density defect queries report what they claim") {
  DensityMatrix rho;
  rho.dims = {2};
  rho.entries = ComplexMatrix::Zero(2, 2);
  rho.entries(0, 0) = 0.7;
  rho.entries(1, 1) = 0.4;
  rho.entries(0, 1) = Complex(0.0, 0.2);
  rho.entries(1, 0) = Complex(0.0, 0.1);

  CHECK(trace_defect(rho) == doctest::Approx(0.1));
  CHECK(hermiticity_defect(rho) == doctest::Approx(0.3));

  DensityMatrix sigma;
  sigma.dims = {2};
  sigma.entries = ComplexMatrix::Zero(2, 2);
  sigma.entries(0, 0) = 1.2;
  sigma.entries(1, 1) = -0.2;
  CHECK(min_eigenvalue(sigma) == doctest::Approx(-0.2));
}
