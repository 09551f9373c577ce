#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace adia {

// How the ladder operators behave at the truncation edge.
//
// Abrupt:        a|0> = 0,               adag|N> = 0
// Periodic:      a|0> = +conj(c)|N>,     adag|N> = +c|0>
// AntiPeriodic:  a|0> = -conj(c)|N>,     adag|N> = -c|0>
//
// c is a non-zero complex wrap coefficient (default 1).
enum class Scheme { Abrupt, Periodic, AntiPeriodic };

struct BoundaryCondition {
  Scheme scheme = Scheme::Abrupt;
  std::complex<double> wrap{1.0, 0.0};

  static BoundaryCondition abrupt();
  static BoundaryCondition periodic(std::complex<double> c = {1.0, 0.0});
  static BoundaryCondition antiperiodic(std::complex<double> c = {1.0, 0.0});

  bool wrapped() const { return scheme != Scheme::Abrupt; }
  // +1 for Periodic, -1 for AntiPeriodic.
  double wrap_sign() const { return scheme == Scheme::AntiPeriodic ? -1.0 : 1.0; }

  bool operator==(const BoundaryCondition& other) const;
};

// Truncated K-mode bosonic Fock space. Each mode m holds occupations
// 0..cutoff(m); the flat index is row-major with mode 1 slowest. Mode
// arguments are 1-based throughout, matching variable x_m.
class FockSpace {
 public:
  FockSpace(int num_modes, std::vector<int> cutoffs, BoundaryCondition bc);
  FockSpace(int num_modes, int cutoff, BoundaryCondition bc);

  int num_modes() const { return num_modes_; }
  int cutoff(int mode) const;
  const std::vector<int>& cutoffs() const { return cutoffs_; }
  const BoundaryCondition& boundary() const { return bc_; }
  long dimension() const { return dimension_; }

  std::vector<int> label_of(long index) const;
  long index_of(const std::vector<int>& label) const;

  bool operator==(const FockSpace& other) const;

 private:
  int num_modes_;
  std::vector<int> cutoffs_;
  BoundaryCondition bc_;
  long dimension_;
};

// Single-mode annihilation operator embedded in the full space (identity on
// the other modes), with the space's boundary scheme applied at the edge.
Eigen::MatrixXcd annihilation(const FockSpace& space, int mode);

// Adjoint of annihilation for the same scheme.
Eigen::MatrixXcd creation(const FockSpace& space, int mode);

// Diagonal of occupation-number labels n_mode. Deliberately the basis label,
// not the product adag*a, which differs at the edge under wrapped schemes.
Eigen::VectorXd number_diag(const FockSpace& space, int mode);

// Dense complex Hermitian matrix tied to a FockSpace. Construction validates
// Hermiticity to 1e-12 * max|entry| and then symmetrizes exactly.
class HermitianOperator {
 public:
  static HermitianOperator from_matrix(FockSpace space, Eigen::MatrixXcd entries);

  const FockSpace& space() const { return space_; }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  long dimension() const { return space_.dimension(); }
  double frobenius_norm() const { return entries_.norm(); }

 private:
  HermitianOperator(FockSpace space, Eigen::MatrixXcd entries)
      : space_(std::move(space)), entries_(std::move(entries)) {}

  FockSpace space_;
  Eigen::MatrixXcd entries_;
};

}  // namespace adia
