#pragma once

#include <Eigen/Dense>
#include <vector>

#include "adia/fock.hpp"
#include "adia/hamiltonian.hpp"

namespace adia {

// Complex amplitudes over the Fock labels of a space; unit norm within 1e-9.
struct StateVector {
  FockSpace space;
  Eigen::VectorXcd amplitudes;
};

struct CoherentPreparation {
  StateVector state;
  double tail_mass;  // probability mass discarded by the truncation
};

// Truncated, renormalized coherent state with per-mode amplitudes
// exp(-|alpha|^2/2) alpha^n / sqrt(n!). Throws NumericGuardError when the
// discarded tail mass exceeds max_tail_mass (default 1e-6): a fatter tail
// means the state is no longer honestly the near-ground state of H_I.
CoherentPreparation coherent_state(const FockSpace& space, const CoherentParams& params,
                                   double max_tail_mass = 1e-6);

struct TrajectorySample {
  double s;  // requested schedule fraction; state is at the nearest step
  StateVector state;
};

struct EvolutionResult {
  StateVector final_state;
  std::vector<TrajectorySample> samples;
  double max_norm_drift;
};

// Integrates the Schrodinger equation under H(t) = H_I + (t/T)(H_P - H_I)
// with midpoint-exponential steps: each step applies
// exp(-i dt H(s_mid)) through the step's eigendecomposition, so every step
// is unitary to roundoff. Aborts if the norm drifts by more than 1e-7.
// Requires num_steps >= 100 and a normalized initial state.
EvolutionResult evolve(const FockSpace& space, const HermitianOperator& HI,
                       const HermitianOperator& HP, const Schedule& schedule,
                       const StateVector& psi0, const std::vector<double>& sample_s = {});

// |amplitude|^2 per Fock label; input must be normalized.
std::vector<double> measure_probabilities(const StateVector& state);

}  // namespace adia
