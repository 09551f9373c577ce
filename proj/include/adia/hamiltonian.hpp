#pragma once

#include <complex>
#include <vector>

#include "adia/fock.hpp"
#include "adia/polynomial.hpp"

namespace adia {

// Coherent-state displacement parameters, one non-zero alpha per mode.
struct CoherentParams {
  std::vector<std::complex<double>> alphas;

  explicit CoherentParams(std::vector<std::complex<double>> a);
  int num_modes() const { return static_cast<int>(alphas.size()); }
};

// Linear interpolation schedule in dimensionless units (hbar = 1):
// s(t) = t / total_time.
struct Schedule {
  double total_time;
  int num_steps;

  Schedule(double total_time, int num_steps);
  double dt() const { return total_time / num_steps; }
};

// H_I = sum_i (adag_i - conj(alpha_i)) (a_i - alpha_i), assembled as the
// full product of the space's boundary-respecting ladder matrices. Hermitian;
// positive semidefinite by construction.
HermitianOperator build_HI(const FockSpace& space, const CoherentParams& params);

// Diagonal problem Hamiltonian with entry D(n_1,...,n_K)^2 at each basis
// label. Values are computed in exact integer arithmetic and pass the 2^53
// guard before conversion.
HermitianOperator build_HP(const FockSpace& space, const DiophantinePolynomial& poly);

// The exact integer diagonal of build_HP, for consumers that need precise
// ground-label comparisons.
std::vector<mpz_class> problem_diagonal_exact(const FockSpace& space,
                                              const DiophantinePolynomial& poly);

// H(s) = (1-s) H_I + s H_P for s in [0,1].
HermitianOperator interpolate(const HermitianOperator& HI, const HermitianOperator& HP,
                              double s);

// Frobenius norm of [H_I, H_P].
double commutator_norm(const HermitianOperator& HI, const HermitianOperator& HP);

}  // namespace adia
