#include "adia/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

#include "adia/errors.hpp"
#include "adia/parallel.hpp"

namespace adia {

namespace {
constexpr double kResidualTol = 1e-8;     // * ||H||_F
constexpr double kOverlapTol = 1e-10;
constexpr double kDegenerateTol = 1e-9;   // * ||H(s)||_F
constexpr double kViolationTol = 1e-10;   // * ||H_P - H_I||_F
}  // namespace

EigenSystem eigendecompose(const HermitianOperator& h) {
  const Eigen::MatrixXcd& m = h.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success)
    throw NumericGuardError("Hermitian eigensolver failed to converge");

  EigenSystem system{solver.eigenvalues(), solver.eigenvectors()};

  // Deterministic gauge: largest-magnitude component real positive.
  long dim = system.vectors.rows();
  for (long k = 0; k < dim; ++k) {
    long pivot = 0;
    double best = -1.0;
    for (long n = 0; n < dim; ++n) {
      double mag = std::abs(system.vectors(n, k));
      if (mag > best) {
        best = mag;
        pivot = n;
      }
    }
    if (best > 0.0) {
      std::complex<double> phase = std::conj(system.vectors(pivot, k)) / best;
      system.vectors.col(k) *= phase;
    }
  }

  double hnorm = h.frobenius_norm();
  double residual =
      (m * system.vectors - system.vectors * system.energies.asDiagonal()).cwiseAbs().maxCoeff();
  if (residual > kResidualTol * std::max(hnorm, 1e-300))
    throw NumericGuardError("eigenpair residual " + std::to_string(residual) +
                            " exceeds tolerance");
  Eigen::MatrixXcd gram = system.vectors.adjoint() * system.vectors;
  gram.diagonal().array() -= 1.0;
  if (gram.cwiseAbs().maxCoeff() > kOverlapTol)
    throw NumericGuardError("eigenvectors lost orthonormality");
  return system;
}

ConditionScanReport condition_scan(const HermitianOperator& HI, const HermitianOperator& HP,
                                   int grid_points) {
  if (!(HI.space() == HP.space()))
    throw ConfigError("condition scan endpoints live on different Fock spaces");
  if (grid_points < 1) throw ConfigError("condition scan needs at least one grid point");
  long dim = HI.dimension();
  if (dim < 2) throw ConfigError("condition scan needs dimension >= 2");

  Eigen::MatrixXcd delta = HP.matrix() - HI.matrix();
  double delta_norm = delta.norm();

  ConditionScanReport report;
  report.commutator_norm = commutator_norm(HI, HP);
  report.endpoints_commute =
      report.commutator_norm <=
      1e-12 * std::max(1.0, HI.frobenius_norm() * HP.frobenius_norm());
  report.violation_threshold = kViolationTol * delta_norm;

  report.grid.resize(static_cast<size_t>(grid_points));
  for (int g = 1; g <= grid_points; ++g)
    report.grid[static_cast<size_t>(g - 1)] = static_cast<double>(g) / (grid_points + 1);

  struct GridCell {
    std::vector<ConditionSample> samples;
    double gap;
  };
  std::vector<GridCell> cells(static_cast<size_t>(grid_points));

  parallel_for(grid_points, [&](long g) {
    double s = report.grid[static_cast<size_t>(g)];
    HermitianOperator hs = interpolate(HI, HP, s);
    EigenSystem system = eigendecompose(hs);
    double hs_norm = hs.frobenius_norm();
    Eigen::MatrixXcd elements = system.vectors.adjoint() * delta * system.vectors;

    GridCell& cell = cells[static_cast<size_t>(g)];
    cell.gap = system.energies(1) - system.energies(0);
    cell.samples.reserve(static_cast<size_t>(dim * (dim - 1) / 2));
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) {
        bool degenerate =
            std::abs(system.energies(j) - system.energies(i)) < kDegenerateTol * hs_norm;
        cell.samples.push_back(
            ConditionSample{s, i, j, std::abs(elements(i, j)), degenerate});
      }
    }
  });

  // Serial reduction in grid order keeps the table and minima deterministic.
  report.global_min = std::numeric_limits<double>::infinity();
  report.min_gap = std::numeric_limits<double>::infinity();
  std::vector<PairMinimum> minima(static_cast<size_t>(dim * (dim - 1) / 2));
  for (auto& pm : minima) pm.value = std::numeric_limits<double>::infinity();

  for (int g = 0; g < grid_points; ++g) {
    const GridCell& cell = cells[static_cast<size_t>(g)];
    double s = report.grid[static_cast<size_t>(g)];
    if (cell.gap < report.min_gap) {
      report.min_gap = cell.gap;
      report.min_gap_s = s;
    }
    size_t flat = 0;
    for (const ConditionSample& sample : cell.samples) {
      report.table.push_back(sample);
      PairMinimum& pm = minima[flat++];
      pm.i = sample.i;
      pm.j = sample.j;
      if (sample.degenerate) {
        ++report.degenerate_samples;
        continue;
      }
      if (sample.abs_element < pm.value) {
        pm.value = sample.abs_element;
        pm.s = sample.s;
      }
      if (sample.abs_element < report.global_min) {
        report.global_min = sample.abs_element;
        report.global_min_s = s;
        report.global_min_i = sample.i;
        report.global_min_j = sample.j;
      }
    }
  }
  report.pair_minima = std::move(minima);
  report.violation_found = report.global_min < report.violation_threshold;
  return report;
}

std::vector<double> recurrence_residual(const EigenSystem& system, int which, double s,
                                        const CoherentParams& params,
                                        const DiophantinePolynomial& poly,
                                        const FockSpace& space) {
  if (space.num_modes() != 1 || poly.num_vars() != 1 || params.num_modes() != 1)
    throw ConfigError("the recurrence residual is defined for one mode (K = 1)");
  if (!(s >= 0.0 && s < 1.0))
    throw ConfigError("recurrence residual requires s < 1 (interior of the schedule)");
  long dim = space.dimension();
  if (system.vectors.rows() != dim || which < 0 || which >= system.energies.size())
    throw ConfigError("eigenindex out of range for this space");

  const BoundaryCondition& bc = space.boundary();
  std::complex<double> alpha = params.alphas[0];
  double alpha_sq = std::norm(alpha);
  std::complex<double> wrap = bc.wrap_sign() * bc.wrap;
  int nmax = space.cutoff(1);
  double energy = system.energies(which);
  Eigen::VectorXcd f = system.vectors.col(which);

  std::vector<double> residuals(static_cast<size_t>(dim));
  for (int k = 0; k <= nmax; ++k) {
    std::complex<double> down =
        k >= 1 ? std::sqrt(static_cast<double>(k)) * f(k - 1)
               : (bc.wrapped() ? wrap * f(nmax) : std::complex<double>(0.0));
    std::complex<double> up =
        k < nmax ? std::sqrt(static_cast<double>(k + 1)) * f(k + 1)
                 : (bc.wrapped() ? std::conj(wrap) * f(0) : std::complex<double>(0.0));
    std::complex<double> lhs = -(1.0 - s) * (alpha * down + std::conj(alpha) * up);

    // Occupation term from adag*a: the label k everywhere except the wrapped
    // edge, where the wrap contributes |c|^2 at k = 0.
    double occupation = (k == 0 && bc.wrapped()) ? std::norm(bc.wrap) : static_cast<double>(k);
    double d_sq = to_double_checked(
        [&] {
          mpz_class v = poly.evaluate({k});
          return mpz_class(v * v);
        }(),
        "D(" + std::to_string(k) + ")^2 in recurrence residual");
    std::complex<double> rhs = (energy - s * d_sq - (1.0 - s) * (occupation + alpha_sq)) * f(k);
    residuals[static_cast<size_t>(k)] = std::abs(lhs - rhs);
  }
  return residuals;
}

PartialSums partial_sum_probe(const EigenSystem& system, std::pair<int, int> pair,
                              const DiophantinePolynomial& poly, int upto) {
  if (poly.num_vars() != 1)
    throw ConfigError("partial sums are defined for one variable (K = 1)");
  long dim = system.vectors.rows();
  if (pair.first < 0 || pair.first >= dim || pair.second < 0 || pair.second >= dim)
    throw ConfigError("eigenpair indices out of range");
  if (upto < 0) throw ConfigError("partial sum bound must be non-negative");

  Eigen::VectorXcd e = system.vectors.col(pair.first);
  Eigen::VectorXcd f = system.vectors.col(pair.second);
  int nmax = static_cast<int>(dim) - 1;

  PartialSums sums{{0.0, 0.0}, {0.0, 0.0}, 0.0};
  int top = std::min(upto, nmax);
  for (int n = 0; n <= top; ++n) {
    std::complex<double> cross = std::conj(e(n)) * f(n);
    mpz_class d = poly.evaluate({n});
    sums.overlap += cross;
    sums.weighted +=
        to_double_checked(mpz_class(d * d), "D(" + std::to_string(n) + ")^2 in partial sum") *
        cross;
  }

  // Bounded-variation sum runs over n < upto using exact values of D; it is
  // not limited by the eigensystem dimension, so divergence stays observable.
  mpz_class variation = 0;
  for (int n = 0; n < upto; ++n) {
    mpz_class a = poly.evaluate({n});
    mpz_class b = poly.evaluate({n + 1});
    variation += abs(a * a - b * b);
  }
  sums.bounded_variation = variation.get_d();
  return sums;
}

}  // namespace adia
