#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adia/evolution.hpp"
#include "adia/fock.hpp"
#include "adia/spectral.hpp"

namespace adia {

// Geometric sweep T_0, T_0 r, T_0 r^2, ... (strictly increasing).
struct TSweep {
  double t0 = 1.0;
  double ratio = 2.0;
  int count = 1;

  std::vector<double> values() const;
};

// What the evolution starts from. Coherent is the physical preparation; it
// coincides with the H_I ground state only up to the truncation tail.
// HiGround starts from the numerically exact ground state of the truncated
// H_I, which is what the identification criterion's premise demands of the
// truncated model; the search uses it so a hit cannot be blamed on an
// imperfect initial state.
enum class InitialState { Coherent, HiGround };
const char* initial_state_name(InitialState s);

struct ExperimentConfig {
  std::string polynomial;
  std::vector<std::complex<double>> alphas;
  std::vector<int> cutoffs;  // one entry per mode
  BoundaryCondition bc;
  InitialState initial_state = InitialState::Coherent;
  TSweep t_sweep;
  double steps_per_unit_time = 100.0;
  int scan_grid = 19;
  std::uint64_t seed = 0;
  // Tail-mass ceiling for the coherent preparation; raise it deliberately to
  // explore fat-tailed truncations. Ignored for HiGround starts.
  double tail_limit = 1e-6;

  void validate() const;  // throws ConfigError
};

// Step count for one sweep cell; shared by run_experiment and the search so
// recorded configs replay bit-for-bit.
int steps_for(double total_time, double steps_per_unit_time);

enum class Verdict { Match, Mismatch, NoneIdentified, SkippedDegenerate };
const char* verdict_name(Verdict v);

struct SweepCell {
  double total_time;
  int num_steps;
  std::vector<double> probabilities;   // per Fock label at t = T
  std::optional<long> identified;      // label index with probability > 1/2
  bool tie_inconclusive = false;       // top probability within 1e-9 of 1/2
  double norm_drift = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  long dimension = 0;

  long ground_index = -1;          // exact argmin of the H_P diagonal
  bool ground_degenerate = false;
  double ground_energy = 0.0;

  double initial_tail_mass = 0.0;          // coherent starts only
  bool initial_ground_degenerate = false;  // HiGround starts only
  bool premise_ok = true;                  // all excited labels start below 1/2
  std::vector<long> premise_violations;    // excited labels starting >= 1/2

  ConditionScanReport scan;
  std::vector<SweepCell> sweep;

  std::optional<long> identified_index;  // at the largest T
  Verdict verdict = Verdict::NoneIdentified;

  bool has_solution = false;
  std::optional<std::vector<int>> solution_point;
  bool identified_is_solution = false;
};

// Full pipeline: premises, condition scan, T sweep, identification, and the
// comparison against the exact H_P ground label.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Randomized hunt for identification-criterion violations: trials draw
// (alpha, polynomial, T), start from the exact truncated H_I ground state so
// every checkable premise of the criterion holds, and count a hit when some
// excited label of H_P ends with probability > 1/2. K = 1.
struct SearchSettings {
  int dimension = 5;  // Fock dimension, i.e. cutoff + 1
  long trials = 10000;
  std::uint64_t seed = 0;
  BoundaryCondition bc;
  double steps_per_unit_time = 20.0;
  double t_min = 1.0;  // T is drawn log-uniformly from [t_min, t_max]
  double t_max = 64.0;
};

struct SearchHit {
  long trial;
  ExperimentConfig config;  // replayable through run_experiment
  long violating_index;
  double probability;
  double total_time;
};

struct SearchOutcome {
  SearchSettings settings;
  long trials_run = 0;
  long degenerate_skipped = 0;          // H_P ground degenerate; criterion undefined
  long initial_degenerate_skipped = 0;  // H_I ground degenerate; premise unavailable
  long premise_skipped = 0;             // an excited label already held >= 1/2 at t=0
  std::vector<SearchHit> hits;
};

SearchOutcome counterexample_search(const SearchSettings& settings);

}  // namespace adia
