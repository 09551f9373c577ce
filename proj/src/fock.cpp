#include "adia/fock.hpp"

#include <cmath>
#include <string>

#include "adia/errors.hpp"

namespace adia {

namespace {
constexpr long kMaxDimension = 20000;  // desk scale; dense eigensolves dominate
constexpr double kWrapMinMagnitude = 1e-12;
}  // namespace

BoundaryCondition BoundaryCondition::abrupt() {
  return BoundaryCondition{Scheme::Abrupt, {0.0, 0.0}};
}

BoundaryCondition BoundaryCondition::periodic(std::complex<double> c) {
  if (std::abs(c) < kWrapMinMagnitude)
    throw ConfigError("periodic boundary condition requires a non-zero wrap coefficient");
  return BoundaryCondition{Scheme::Periodic, c};
}

BoundaryCondition BoundaryCondition::antiperiodic(std::complex<double> c) {
  if (std::abs(c) < kWrapMinMagnitude)
    throw ConfigError("antiperiodic boundary condition requires a non-zero wrap coefficient");
  return BoundaryCondition{Scheme::AntiPeriodic, c};
}

bool BoundaryCondition::operator==(const BoundaryCondition& other) const {
  if (scheme != other.scheme) return false;
  if (scheme == Scheme::Abrupt) return true;
  return wrap == other.wrap;
}

FockSpace::FockSpace(int num_modes, std::vector<int> cutoffs, BoundaryCondition bc)
    : num_modes_(num_modes), cutoffs_(std::move(cutoffs)), bc_(bc) {
  if (num_modes_ < 1) throw ConfigError("Fock space needs at least one mode");
  if (cutoffs_.size() != static_cast<size_t>(num_modes_))
    throw ConfigError("cutoff list length does not match mode count");
  dimension_ = 1;
  for (int c : cutoffs_) {
    if (c < 0) throw ConfigError("mode cutoff must be non-negative");
    dimension_ *= static_cast<long>(c) + 1;
    if (dimension_ > kMaxDimension)
      throw ConfigError("Fock dimension exceeds the desk-scale cap of " +
                        std::to_string(kMaxDimension));
  }
}

FockSpace::FockSpace(int num_modes, int cutoff, BoundaryCondition bc)
    : FockSpace(num_modes, std::vector<int>(static_cast<size_t>(std::max(num_modes, 1)), cutoff),
                bc) {}

int FockSpace::cutoff(int mode) const {
  if (mode < 1 || mode > num_modes_)
    throw ConfigError("mode " + std::to_string(mode) + " out of range 1.." +
                      std::to_string(num_modes_));
  return cutoffs_[static_cast<size_t>(mode - 1)];
}

std::vector<int> FockSpace::label_of(long index) const {
  if (index < 0 || index >= dimension_)
    throw ConfigError("basis index out of range");
  std::vector<int> label(static_cast<size_t>(num_modes_));
  for (int m = num_modes_ - 1; m >= 0; --m) {
    long levels = cutoffs_[static_cast<size_t>(m)] + 1;
    label[static_cast<size_t>(m)] = static_cast<int>(index % levels);
    index /= levels;
  }
  return label;
}

long FockSpace::index_of(const std::vector<int>& label) const {
  if (label.size() != static_cast<size_t>(num_modes_))
    throw ConfigError("label length does not match mode count");
  long index = 0;
  for (int m = 0; m < num_modes_; ++m) {
    int n = label[static_cast<size_t>(m)];
    int c = cutoffs_[static_cast<size_t>(m)];
    if (n < 0 || n > c) throw ConfigError("occupation out of range in label");
    index = index * (c + 1) + n;
  }
  return index;
}

bool FockSpace::operator==(const FockSpace& other) const {
  return num_modes_ == other.num_modes_ && cutoffs_ == other.cutoffs_ && bc_ == other.bc_;
}

Eigen::MatrixXcd annihilation(const FockSpace& space, int mode) {
  int nmax = space.cutoff(mode);  // validates mode
  long dim = space.dimension();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  const BoundaryCondition& bc = space.boundary();

  for (long col = 0; col < dim; ++col) {
    std::vector<int> label = space.label_of(col);
    int k = label[static_cast<size_t>(mode - 1)];
    if (k >= 1) {
      label[static_cast<size_t>(mode - 1)] = k - 1;
      a(space.index_of(label), col) += std::sqrt(static_cast<double>(k));
    } else if (bc.wrapped()) {
      // a|0> = (+/-) conj(c) |N>
      label[static_cast<size_t>(mode - 1)] = nmax;
      a(space.index_of(label), col) += bc.wrap_sign() * std::conj(bc.wrap);
    }
  }
  return a;
}

Eigen::MatrixXcd creation(const FockSpace& space, int mode) {
  return annihilation(space, mode).adjoint();
}

Eigen::VectorXd number_diag(const FockSpace& space, int mode) {
  space.cutoff(mode);  // validates mode
  long dim = space.dimension();
  Eigen::VectorXd diag(dim);
  for (long i = 0; i < dim; ++i)
    diag(i) = static_cast<double>(space.label_of(i)[static_cast<size_t>(mode - 1)]);
  return diag;
}

HermitianOperator HermitianOperator::from_matrix(FockSpace space, Eigen::MatrixXcd entries) {
  if (entries.rows() != entries.cols() || entries.rows() != space.dimension())
    throw ConfigError("matrix size does not match Fock-space dimension");
  double scale = entries.cwiseAbs().maxCoeff();
  double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale)
    throw NumericGuardError("matrix is not Hermitian: max asymmetry " + std::to_string(asym));
  Eigen::MatrixXcd symmetrized = 0.5 * (entries + entries.adjoint().eval());
  return HermitianOperator(std::move(space), std::move(symmetrized));
}

}  // namespace adia
