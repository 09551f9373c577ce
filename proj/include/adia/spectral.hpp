#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "adia/fock.hpp"
#include "adia/hamiltonian.hpp"
#include "adia/polynomial.hpp"

namespace adia {

// Full spectrum of a Hermitian operator: energies ascending, orthonormal
// eigenvector columns. The gauge is fixed deterministically by rotating each
// column so its largest-magnitude component is real positive.
struct EigenSystem {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd vectors;
};

// Dense solve with post-validation: residual <= 1e-8 * ||H||_F per pair,
// pairwise overlaps <= 1e-10, norms within 1e-10 of one.
EigenSystem eigendecompose(const HermitianOperator& h);

// One scanned matrix element |<v_i(s)| H_P - H_I |v_j(s)>|, i < j. Pairs
// closer in energy than 1e-9 * ||H(s)||_F are flagged degenerate; within a
// degenerate subspace the element is gauge-dependent, so flagged samples are
// excluded from the minima.
struct ConditionSample {
  double s;
  int i;
  int j;
  double abs_element;
  bool degenerate;
};

struct PairMinimum {
  int i;
  int j;
  double value;
  double s;
};

struct ConditionScanReport {
  std::vector<double> grid;              // interior s values, g/(G+1)
  std::vector<ConditionSample> table;    // all (s, pair) samples
  std::vector<PairMinimum> pair_minima;  // per-pair minimum over the grid
  double global_min = 0.0;
  double global_min_s = 0.0;
  int global_min_i = -1;
  int global_min_j = -1;
  long degenerate_samples = 0;
  double commutator_norm = 0.0;
  bool endpoints_commute = false;  // criterion premises fail when true
  double min_gap = 0.0;            // min over the grid of E_1(s) - E_0(s)
  double min_gap_s = 0.0;
  double violation_threshold = 0.0;  // 1e-10 * ||H_P - H_I||_F
  bool violation_found = false;      // some non-degenerate element below threshold
};

// Eigendecomposes H(s) on the interior grid s_g = g/(G+1), g = 1..G, and
// tabulates |<e|H_P - H_I|f>| for every unordered eigenpair. Grid points run
// on parallel workers; assembly is order-independent.
ConditionScanReport condition_scan(const HermitianOperator& HI, const HermitianOperator& HP,
                                   int grid_points);

// Componentwise residual of the one-mode three-term recurrence satisfied by
// any eigenvector f of H(s) = (1-s) H_I + s H_P:
//
//   -(1-s) (alpha sqrt(k) f_{k-1} + conj(alpha) sqrt(k+1) f_{k+1})
//     = (E - s D(k)^2 - (1-s)(k + |alpha|^2)) f_k
//
// with edge coefficients per the space's boundary scheme: wrapped schemes
// route f_{-1} -> (+/-) c f_N and f_{N+1} -> (+/-) conj(c) f_0 and carry the
// |c|^2 occupation correction at k = 0; the abrupt scheme drops the
// out-of-range neighbour instead. Requires K = 1 and s < 1.
std::vector<double> recurrence_residual(const EigenSystem& system, int which, double s,
                                        const CoherentParams& params,
                                        const DiophantinePolynomial& poly,
                                        const FockSpace& space);

// Truncated partial sums over Fock components of an eigenpair (e, f):
//   overlap         sum_{n<=upto} conj(e_n) f_n
//   weighted        sum_{n<=upto} D(n)^2 conj(e_n) f_n
//   bounded_variation  sum_{n<upto} |D(n)^2 - D(n+1)^2|
// The last is the scanner for the bounded-variation requirement that fails
// for every non-constant polynomial as upto grows. Requires K = 1.
struct PartialSums {
  std::complex<double> overlap;
  std::complex<double> weighted;
  double bounded_variation;
};

PartialSums partial_sum_probe(const EigenSystem& system, std::pair<int, int> pair,
                              const DiophantinePolynomial& poly, int upto);

}  // namespace adia
