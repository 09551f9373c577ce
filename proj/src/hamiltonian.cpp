#include "adia/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "adia/errors.hpp"

namespace adia {

CoherentParams::CoherentParams(std::vector<std::complex<double>> a) : alphas(std::move(a)) {
  if (alphas.empty()) throw ConfigError("coherent parameters need at least one alpha");
  for (size_t i = 0; i < alphas.size(); ++i)
    if (std::abs(alphas[i]) <= 1e-12)
      throw ConfigError("alpha_" + std::to_string(i + 1) + " must be non-zero");
}

Schedule::Schedule(double total_time_, int num_steps_)
    : total_time(total_time_), num_steps(num_steps_) {
  if (!(total_time > 0)) throw ConfigError("schedule total time must be positive");
  if (num_steps < 1) throw ConfigError("schedule needs a positive step count");
}

HermitianOperator build_HI(const FockSpace& space, const CoherentParams& params) {
  if (params.num_modes() != space.num_modes())
    throw ConfigError("alpha count does not match mode count");

  long dim = space.dimension();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim, dim);
  for (int m = 1; m <= space.num_modes(); ++m) {
    std::complex<double> alpha = params.alphas[static_cast<size_t>(m - 1)];
    Eigen::MatrixXcd shifted = annihilation(space, m) - alpha * identity;
    h += shifted.adjoint() * shifted;  // (adag - conj(alpha)) (a - alpha)
  }
  return HermitianOperator::from_matrix(space, std::move(h));
}

std::vector<mpz_class> problem_diagonal_exact(const FockSpace& space,
                                              const DiophantinePolynomial& poly) {
  if (poly.num_vars() != space.num_modes())
    throw ConfigError("polynomial has " + std::to_string(poly.num_vars()) +
                      " variables but the space has " + std::to_string(space.num_modes()) +
                      " modes");
  long dim = space.dimension();
  std::vector<mpz_class> diag(static_cast<size_t>(dim));
  for (long i = 0; i < dim; ++i) {
    mpz_class value = poly.evaluate(space.label_of(i));
    diag[static_cast<size_t>(i)] = value * value;
  }
  return diag;
}

HermitianOperator build_HP(const FockSpace& space, const DiophantinePolynomial& poly) {
  std::vector<mpz_class> exact = problem_diagonal_exact(space, poly);
  long dim = space.dimension();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (long i = 0; i < dim; ++i)
    h(i, i) = to_double_checked(exact[static_cast<size_t>(i)],
                                "problem Hamiltonian entry D(n)^2 at basis index " +
                                    std::to_string(i));
  return HermitianOperator::from_matrix(space, std::move(h));
}

HermitianOperator interpolate(const HermitianOperator& HI, const HermitianOperator& HP,
                              double s) {
  if (!(HI.space() == HP.space()))
    throw ConfigError("interpolation endpoints live on different Fock spaces");
  if (!(s >= 0.0 && s <= 1.0))
    throw ConfigError("interpolation parameter s must be in [0, 1]");
  return HermitianOperator::from_matrix(HI.space(),
                                        (1.0 - s) * HI.matrix() + s * HP.matrix());
}

double commutator_norm(const HermitianOperator& HI, const HermitianOperator& HP) {
  if (!(HI.space() == HP.space()))
    throw ConfigError("commutator operands live on different Fock spaces");
  const Eigen::MatrixXcd& a = HI.matrix();
  const Eigen::MatrixXcd& b = HP.matrix();
  return (a * b - b * a).norm();
}

}  // namespace adia
