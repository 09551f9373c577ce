#include "adia/evolution.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "adia/errors.hpp"

namespace adia {

namespace {
constexpr double kNormTol = 1e-9;
constexpr double kDriftAbort = 1e-7;

void require_normalized(const Eigen::VectorXcd& amplitudes, const char* who) {
  double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kNormTol)
    throw ConfigError(std::string(who) + " is not normalized: ||psi|| = " +
                      std::to_string(norm));
}
}  // namespace

CoherentPreparation coherent_state(const FockSpace& space, const CoherentParams& params,
                                   double max_tail_mass) {
  if (params.num_modes() != space.num_modes())
    throw ConfigError("alpha count does not match mode count");

  // Per-mode amplitudes exp(-|a|^2/2) a^n / sqrt(n!), built by recurrence.
  std::vector<Eigen::VectorXcd> mode_amps;
  double captured = 1.0;
  for (int m = 1; m <= space.num_modes(); ++m) {
    std::complex<double> alpha = params.alphas[static_cast<size_t>(m - 1)];
    int nmax = space.cutoff(m);
    Eigen::VectorXcd amps(nmax + 1);
    amps(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= nmax; ++n) amps(n) = amps(n - 1) * alpha / std::sqrt(double(n));
    captured *= amps.squaredNorm();
    mode_amps.push_back(std::move(amps));
  }

  double tail_mass = 1.0 - captured;
  if (tail_mass > max_tail_mass)
    throw NumericGuardError(
        "coherent-state tail mass " + std::to_string(tail_mass) + " exceeds the limit " +
        std::to_string(max_tail_mass) + "; raise the cutoff or shrink |alpha|");

  long dim = space.dimension();
  Eigen::VectorXcd amplitudes(dim);
  for (long i = 0; i < dim; ++i) {
    std::vector<int> label = space.label_of(i);
    std::complex<double> product = 1.0;
    for (int m = 0; m < space.num_modes(); ++m)
      product *= mode_amps[static_cast<size_t>(m)](label[static_cast<size_t>(m)]);
    amplitudes(i) = product;
  }
  double captured_norm = amplitudes.norm();
  if (!(captured_norm > 0))
    throw NumericGuardError("coherent state has no mass inside the truncation");
  amplitudes /= captured_norm;
  return CoherentPreparation{StateVector{space, std::move(amplitudes)}, tail_mass};
}

EvolutionResult evolve(const FockSpace& space, const HermitianOperator& HI,
                       const HermitianOperator& HP, const Schedule& schedule,
                       const StateVector& psi0, const std::vector<double>& sample_s) {
  if (!(HI.space() == space) || !(HP.space() == space) || !(psi0.space == space))
    throw ConfigError("evolution operands live on different Fock spaces");
  if (schedule.num_steps < 100)
    throw ConfigError("evolution needs at least 100 steps for the midpoint rule");
  require_normalized(psi0.amplitudes, "initial state");

  int steps = schedule.num_steps;
  double dt = schedule.dt();

  // Requested sample fractions snap to the nearest step boundary; s = 0 is
  // the untouched initial state.
  std::multimap<int, double> samples_at;
  for (double s : sample_s) {
    if (!(s >= 0.0 && s <= 1.0)) throw ConfigError("sample fractions must lie in [0, 1]");
    samples_at.emplace(static_cast<int>(std::lround(s * steps)), s);
  }

  std::vector<TrajectorySample> samples;
  double max_norm_drift = 0.0;
  for (auto [step, s] : samples_at)
    if (step == 0) samples.push_back(TrajectorySample{s, psi0});

  Eigen::VectorXcd psi = psi0.amplitudes;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  for (int m = 0; m < steps; ++m) {
    double s_mid = (m + 0.5) / steps;
    HermitianOperator hs = interpolate(HI, HP, s_mid);
    solver.compute(hs.matrix());
    if (solver.info() != Eigen::Success)
      throw NumericGuardError("propagator eigensolve failed at step " + std::to_string(m));

    // psi <- V exp(-i dt L) V^dag psi
    Eigen::VectorXcd rotated = solver.eigenvectors().adjoint() * psi;
    for (long k = 0; k < rotated.size(); ++k)
      rotated(k) *= std::exp(std::complex<double>(0.0, -dt * solver.eigenvalues()(k)));
    psi = solver.eigenvectors() * rotated;

    double drift = std::abs(psi.norm() - 1.0);
    max_norm_drift = std::max(max_norm_drift, drift);
    if (drift > kDriftAbort)
      throw NumericGuardError("norm drift " + std::to_string(drift) + " at step " +
                              std::to_string(m + 1) + " of " + std::to_string(steps) +
                              "; the step size is too large");

    auto range = samples_at.equal_range(m + 1);
    for (auto it = range.first; it != range.second; ++it)
      samples.push_back(TrajectorySample{it->second, StateVector{space, psi}});
  }

  return EvolutionResult{StateVector{space, std::move(psi)}, std::move(samples), max_norm_drift};
}

std::vector<double> measure_probabilities(const StateVector& state) {
  require_normalized(state.amplitudes, "measured state");
  std::vector<double> probabilities(static_cast<size_t>(state.amplitudes.size()));
  for (long i = 0; i < state.amplitudes.size(); ++i)
    probabilities[static_cast<size_t>(i)] = std::norm(state.amplitudes(i));
  return probabilities;
}

}  // namespace adia
