#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "adia/errors.hpp"
#include "adia/evolution.hpp"
#include "adia/fock.hpp"
#include "adia/hamiltonian.hpp"
#include "adia/polynomial.hpp"
#include "adia/spectral.hpp"

using namespace adia;
using Complex = std::complex<double>;

namespace {

// Independent RK4 integration of d psi / dt = -i H(t) psi with
// H(t) = (1 - t/T) HI + (t/T) HP. Deliberately shares nothing with the
// midpoint-exponential production path except the Hamiltonian matrices.
Eigen::VectorXcd rk4_reference(const Eigen::MatrixXcd& hi, const Eigen::MatrixXcd& hp,
                               double total_time, int steps,
                               Eigen::VectorXcd psi) {
  const Complex minus_i(0.0, -1.0);
  double h = total_time / steps;
  auto ham = [&](double t) -> Eigen::MatrixXcd {
    double s = t / total_time;
    return (1.0 - s) * hi + s * hp;
  };
  for (int m = 0; m < steps; ++m) {
    double t = m * h;
    Eigen::MatrixXcd h0 = ham(t);
    Eigen::MatrixXcd h_mid = ham(t + 0.5 * h);
    Eigen::MatrixXcd h1 = ham(t + h);
    Eigen::VectorXcd k1 = minus_i * (h0 * psi);
    Eigen::VectorXcd k2 = minus_i * (h_mid * (psi + 0.5 * h * k1));
    Eigen::VectorXcd k3 = minus_i * (h_mid * (psi + 0.5 * h * k2));
    Eigen::VectorXcd k4 = minus_i * (h1 * (psi + h * k3));
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

double lfact(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

TEST_CASE("coherent amplitudes match the closed form") {
  CoherentParams params({Complex(1.0)});
  FockSpace space(1, 40, BoundaryCondition::abrupt());
  auto prep = coherent_state(space, params);
  CHECK(prep.tail_mass >= 0.0);
  CHECK(prep.tail_mass < 1e-15);
  // exp(-1/2) / sqrt(n!) via lgamma, independent of the recurrence used in
  // the implementation.
  for (int n = 0; n <= 40; ++n) {
    double expected = std::exp(-0.5 - 0.5 * lfact(n));
    CHECK(prep.state.amplitudes(n).real() ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(prep.state.amplitudes(n).imag() == 0.0);
  }
  CHECK(prep.state.amplitudes(0).real() == doctest::Approx(0.60653).epsilon(1e-4));
  CHECK(std::abs(prep.state.amplitudes(2) / prep.state.amplitudes(1) -
                 Complex(1.0 / std::sqrt(2.0))) <= 1e-14);
  CHECK(prep.state.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coherent state at alpha=1 overlaps the numerical H_I ground state") {
  CoherentParams params({Complex(1.0)});
  FockSpace space(1, 40, BoundaryCondition::abrupt());
  auto prep = coherent_state(space, params);
  auto system = eigendecompose(build_HI(space, params));
  // |<ground|coherent>|; gauge-independent via the absolute value.
  double overlap = std::abs((system.vectors.col(0).adjoint() * prep.state.amplitudes)(0));
  CHECK(overlap >= 1.0 - 1e-8);
}

TEST_CASE("fat coherent tails trip the guard unless the limit is relaxed") {
  CoherentParams params({Complex(1.0)});
  FockSpace space(1, 8, BoundaryCondition::abrupt());
  CHECK_THROWS_AS(coherent_state(space, params), NumericGuardError);
  auto prep = coherent_state(space, params, 1e-4);
  CHECK(prep.tail_mass > 1e-6);
  CHECK(prep.tail_mass < 1e-5);
  CHECK(prep.state.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("multi-mode coherent state is the normalized product of modes") {
  std::vector<Complex> alphas{Complex(0.8, 0.3), Complex(-0.5, 0.6)};
  CoherentParams params(alphas);
  FockSpace space(2, 14, BoundaryCondition::abrupt());
  auto prep = coherent_state(space, params);
  for (long i = 0; i < space.dimension(); i += 37) {
    auto label = space.label_of(i);
    Complex expect(1.0, 0.0);
    for (int m = 0; m < 2; ++m) {
      Complex a = alphas[static_cast<size_t>(m)];
      int n = label[static_cast<size_t>(m)];
      expect *= std::exp(-0.5 * std::norm(a)) * std::pow(a, n) *
                std::exp(-0.5 * lfact(n));
    }
    CHECK(std::abs(prep.state.amplitudes(i) - expect) <= 1e-12);
  }
  CHECK(prep.state.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(
      coherent_state(FockSpace(1, 14, BoundaryCondition::abrupt()), params),
      ConfigError);
}

TEST_CASE("probability at n=0 for alpha=1 approximates exp(-1)") {
  CoherentParams params({Complex(1.0)});
  FockSpace space(1, 12, BoundaryCondition::abrupt());
  auto prep = coherent_state(space, params);
  auto probs = measure_probabilities(prep.state);
  CHECK(probs[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
  double total = 0.0;
  for (double p : probs) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("constant-Hamiltonian evolution matches the spectral closed form") {
  CoherentParams params({Complex(1.0)});
  FockSpace space(1, 12, BoundaryCondition::abrupt());
  auto hi = build_HI(space, params);
  auto prep = coherent_state(space, params);
  double total_time = 3.0;
  auto result = evolve(space, hi, hi, Schedule(total_time, 300), prep.state);

  auto system = eigendecompose(hi);
  Eigen::VectorXcd rotated = system.vectors.adjoint() * prep.state.amplitudes;
  for (long k = 0; k < rotated.size(); ++k)
    rotated(k) *= std::exp(Complex(0.0, -total_time * system.energies(k)));
  Eigen::VectorXcd closed_form = system.vectors * rotated;

  CHECK((result.final_state.amplitudes - closed_form).norm() <= 1e-9);
  CHECK(result.max_norm_drift <= 1e-9);
}

TEST_CASE("trajectory samples snap to steps and s=0 is exactly psi0") {
  auto poly = DiophantinePolynomial::parse("x1 - 2", 1);
  CoherentParams params({Complex(1.0)});
  FockSpace space(1, 12, BoundaryCondition::abrupt());
  auto hi = build_HI(space, params);
  auto hp = build_HP(space, poly);
  auto prep = coherent_state(space, params);
  auto result = evolve(space, hi, hp, Schedule(2.0, 200), prep.state,
                       {0.0, 0.5, 1.0});
  REQUIRE(result.samples.size() == 3);
  CHECK(result.samples[0].s == 0.0);
  CHECK((result.samples[0].state.amplitudes - prep.state.amplitudes).norm() == 0.0);
  CHECK(result.samples[2].s == 1.0);
  CHECK((result.samples[2].state.amplitudes - result.final_state.amplitudes).norm() ==
        0.0);
  double mid_norm = result.samples[1].state.amplitudes.norm();
  CHECK(mid_norm == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("evolution validates schedule, normalization, and spaces") {
  auto poly = DiophantinePolynomial::parse("x1 - 2", 1);
  CoherentParams params({Complex(1.0)});
  FockSpace space(1, 12, BoundaryCondition::abrupt());
  auto hi = build_HI(space, params);
  auto hp = build_HP(space, poly);
  auto prep = coherent_state(space, params);

  CHECK_THROWS_AS(evolve(space, hi, hp, Schedule(1.0, 99), prep.state), ConfigError);

  StateVector crooked = prep.state;
  crooked.amplitudes *= 1.5;
  CHECK_THROWS_AS(evolve(space, hi, hp, Schedule(1.0, 100), crooked), ConfigError);

  FockSpace other(1, 10, BoundaryCondition::abrupt());
  auto hp_other = build_HP(other, poly);
  CHECK_THROWS_AS(evolve(space, hi, hp_other, Schedule(1.0, 100), prep.state),
                  ConfigError);

  CHECK_THROWS_AS(
      evolve(space, hi, hp, Schedule(1.0, 100), prep.state, {1.25}), ConfigError);
}

TEST_CASE("halving the step size leaves final probabilities unchanged to 1e-6") {
  // The convergence budget is calibrated for desk dimensions <= 6, where
  // ||H_P|| stays small; the tail limit is relaxed because premise fidelity
  // is irrelevant to an integrator check.
  auto poly = DiophantinePolynomial::parse("x1 - 2", 1);
  CoherentParams params({Complex(1.0)});
  FockSpace space(1, 5, BoundaryCondition::abrupt());
  auto hi = build_HI(space, params);
  auto hp = build_HP(space, poly);
  auto prep = coherent_state(space, params, 1e-3);
  double total_time = 8.0;
  auto coarse = evolve(space, hi, hp, Schedule(total_time, 1600), prep.state);
  auto fine = evolve(space, hi, hp, Schedule(total_time, 3200), prep.state);
  auto pc = measure_probabilities(coarse.final_state);
  auto pf = measure_probabilities(fine.final_state);
  for (size_t i = 0; i < pc.size(); ++i) CHECK(std::abs(pc[i] - pf[i]) < 1e-6);
}

TEST_CASE("midpoint-exponential evolution agrees with the RK4 reference") {
  auto poly = DiophantinePolynomial::parse("x1 - 2", 1);
  CoherentParams params({Complex(1.0)});
  // Dimension 5 needs a relaxed tail limit; the premise drift is irrelevant
  // to an integrator cross-check.
  FockSpace space(1, 4, BoundaryCondition::antiperiodic(Complex(1.0)));
  auto hi = build_HI(space, params);
  auto hp = build_HP(space, poly);
  auto prep = coherent_state(space, params, 0.1);
  double total_time = 5.0;

  auto production = evolve(space, hi, hp, Schedule(total_time, 10000), prep.state);
  Eigen::VectorXcd reference = rk4_reference(hi.matrix(), hp.matrix(), total_time,
                                             20000, prep.state.amplitudes);
  CHECK(std::abs(reference.norm() - 1.0) < 1e-9);
  CHECK((production.final_state.amplitudes - reference).norm() < 1e-6);
}

TEST_CASE("measure_probabilities on basis states and superpositions") {
  FockSpace space(1, 4, BoundaryCondition::abrupt());
  Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(5);
  basis(3) = 1.0;
  auto probs = measure_probabilities(StateVector{space, basis});
  for (int i = 0; i < 5; ++i) CHECK(probs[static_cast<size_t>(i)] == (i == 3 ? 1.0 : 0.0));

  Eigen::VectorXcd both = Eigen::VectorXcd::Zero(5);
  both(0) = Complex(1.0 / std::sqrt(2.0));
  both(4) = Complex(0.0, -1.0 / std::sqrt(2.0));
  auto half = measure_probabilities(StateVector{space, both});
  CHECK(half[0] == doctest::Approx(0.5));
  CHECK(half[4] == doctest::Approx(0.5));

  Eigen::VectorXcd crooked = Eigen::VectorXcd::Ones(5);
  CHECK_THROWS_AS(measure_probabilities(StateVector{space, crooked}), ConfigError);
}
