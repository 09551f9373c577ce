#include "adia/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "adia/errors.hpp"
#include "adia/parallel.hpp"
#include "adia/polynomial.hpp"

namespace adia {

namespace {
constexpr double kTieBand = 1e-9;

// Identification with the strict > 1/2 rule: probabilities within the tie
// band of 1/2 are inconclusive rather than identified.
void identify(SweepCell& cell) {
  long best = -1;
  double best_p = -1.0;
  for (size_t i = 0; i < cell.probabilities.size(); ++i) {
    if (cell.probabilities[i] > best_p) {
      best_p = cell.probabilities[i];
      best = static_cast<long>(i);
    }
  }
  if (best_p > 0.5 + kTieBand)
    cell.identified = best;
  else if (best_p >= 0.5 - kTieBand)
    cell.tie_inconclusive = true;
}
}  // namespace

std::vector<double> TSweep::values() const {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(count));
  double t = t0;
  for (int i = 0; i < count; ++i, t *= ratio) out.push_back(t);
  return out;
}

void ExperimentConfig::validate() const {
  if (polynomial.empty()) throw ConfigError("config is missing the polynomial");
  if (alphas.empty()) throw ConfigError("config needs at least one alpha");
  if (cutoffs.empty()) throw ConfigError("config needs at least one cutoff");
  if (alphas.size() != cutoffs.size())
    throw ConfigError("alphas and cutoffs must have one entry per mode");
  for (int c : cutoffs)
    if (c < 1) throw ConfigError("each mode cutoff must be at least 1");
  if (!(t_sweep.t0 > 0)) throw ConfigError("T sweep start must be positive");
  if (t_sweep.count < 1) throw ConfigError("T sweep needs at least one point");
  if (t_sweep.count > 1 && !(t_sweep.ratio > 1.0))
    throw ConfigError("T sweep ratio must exceed 1 so the sweep is strictly increasing");
  if (!(t_sweep.ratio > 0)) throw ConfigError("T sweep ratio must be positive");
  if (!(steps_per_unit_time > 0)) throw ConfigError("steps per unit time must be positive");
  if (scan_grid < 1) throw ConfigError("condition-scan grid size must be at least 1");
  if (!(tail_limit > 0.0 && tail_limit <= 1.0))
    throw ConfigError("tail limit must lie in (0, 1]");
}

int steps_for(double total_time, double steps_per_unit_time) {
  long steps = std::lround(total_time * steps_per_unit_time);
  return static_cast<int>(std::max<long>(steps, 100));
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::NoneIdentified: return "none-identified";
    case Verdict::SkippedDegenerate: return "skipped-degenerate";
  }
  return "unknown";
}

const char* initial_state_name(InitialState s) {
  return s == InitialState::Coherent ? "coherent" : "hi_ground";
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();

  int num_modes = static_cast<int>(config.cutoffs.size());
  DiophantinePolynomial poly = DiophantinePolynomial::parse(config.polynomial, num_modes);
  if (poly.num_vars() != num_modes)
    throw ConfigError("polynomial mentions more variables than configured modes");
  FockSpace space(num_modes, config.cutoffs, config.bc);
  CoherentParams params(config.alphas);

  ExperimentReport report;
  report.config = config;
  report.dimension = space.dimension();

  HermitianOperator hi = build_HI(space, params);
  HermitianOperator hp = build_HP(space, poly);

  // Ground label of H_P from the exact integer diagonal, never from the
  // evolved state.
  std::vector<mpz_class> diag = problem_diagonal_exact(space, poly);
  size_t ground = 0;
  for (size_t i = 1; i < diag.size(); ++i)
    if (diag[i] < diag[ground]) ground = i;
  report.ground_index = static_cast<long>(ground);
  report.ground_energy = to_double_checked(diag[ground], "ground energy of H_P");

  bool exact_tie = false;
  for (size_t i = 0; i < diag.size(); ++i)
    if (i != ground && diag[i] == diag[ground]) exact_tie = true;
  // Tolerance absorbs only the float conversion; integer ties are exact.
  double degeneracy_band = 1e-9 * (1.0 + hp.frobenius_norm());
  double runner_up = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < diag.size(); ++i) {
    if (i == ground) continue;
    runner_up = std::min(runner_up, hp.matrix()(static_cast<long>(i), static_cast<long>(i)).real());
  }
  report.ground_degenerate =
      exact_tie || (runner_up - report.ground_energy) <= degeneracy_band;

  StateVector psi0{space, Eigen::VectorXcd()};
  if (config.initial_state == InitialState::Coherent) {
    CoherentPreparation prep = coherent_state(space, params, config.tail_limit);
    report.initial_tail_mass = prep.tail_mass;
    psi0 = std::move(prep.state);
  } else {
    EigenSystem hi_system = eigendecompose(hi);
    double band = 1e-9 * (1.0 + hi.frobenius_norm());
    report.initial_ground_degenerate =
        space.dimension() > 1 && (hi_system.energies(1) - hi_system.energies(0)) <= band;
    psi0 = StateVector{space, hi_system.vectors.col(0)};
  }

  if (!report.ground_degenerate) {
    std::vector<double> p0 = measure_probabilities(psi0);
    for (size_t i = 0; i < p0.size(); ++i) {
      if (static_cast<long>(i) == report.ground_index) continue;
      if (p0[i] >= 0.5) report.premise_violations.push_back(static_cast<long>(i));
    }
    report.premise_ok = report.premise_violations.empty();
  }

  report.scan = condition_scan(hi, hp, config.scan_grid);

  std::vector<double> sweep_times = config.t_sweep.values();
  report.sweep.resize(sweep_times.size());
  parallel_for(static_cast<long>(sweep_times.size()), [&](long cell_index) {
    double total_time = sweep_times[static_cast<size_t>(cell_index)];
    Schedule schedule(total_time, steps_for(total_time, config.steps_per_unit_time));
    EvolutionResult evolved = evolve(space, hi, hp, schedule, psi0);

    SweepCell& cell = report.sweep[static_cast<size_t>(cell_index)];
    cell.total_time = total_time;
    cell.num_steps = schedule.num_steps;
    cell.probabilities = measure_probabilities(evolved.final_state);
    cell.norm_drift = evolved.max_norm_drift;
    identify(cell);
  });

  report.identified_index = report.sweep.back().identified;
  if (report.ground_degenerate)
    report.verdict = Verdict::SkippedDegenerate;
  else if (!report.identified_index)
    report.verdict = Verdict::NoneIdentified;
  else if (*report.identified_index == report.ground_index)
    report.verdict = Verdict::Match;
  else
    report.verdict = Verdict::Mismatch;

  auto solution = has_solution_under_cutoff(poly, config.cutoffs);
  report.has_solution = solution.has_value();
  report.solution_point = solution;
  if (report.identified_index) {
    std::vector<int> label = space.label_of(*report.identified_index);
    report.identified_is_solution = poly.evaluate(label) == 0;
  }
  return report;
}

namespace {

// Per-trial generator: fully determined by (seed, trial), so trials can run
// on any worker in any order. Uniform doubles are derived from raw engine
// output to keep streams implementation-independent.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    engine_.seed(seq);
  }

  double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(u01() * static_cast<double>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

enum class TrialResult { Clean, Hit, DegenerateSkip, InitialDegenerateSkip, PremiseSkip };

}  // namespace

SearchOutcome counterexample_search(const SearchSettings& settings) {
  if (settings.dimension < 2) throw ConfigError("search dimension must be at least 2");
  if (settings.trials < 0) throw ConfigError("trial count must be non-negative");
  if (!(settings.t_min > 0 && settings.t_max >= settings.t_min))
    throw ConfigError("search T range is invalid");

  SearchOutcome outcome;
  outcome.settings = settings;

  int cutoff = settings.dimension - 1;
  FockSpace space(1, cutoff, settings.bc);

  std::vector<TrialResult> results(static_cast<size_t>(settings.trials), TrialResult::Clean);
  std::vector<SearchHit> hit_slots(static_cast<size_t>(settings.trials));

  parallel_for(settings.trials, [&](long trial) {
    TrialRng rng(settings.seed, static_cast<std::uint64_t>(trial));

    // alpha uniform on the annulus 0.3 <= |alpha| <= 3 (area-uniform).
    double r = std::sqrt(0.09 + rng.u01() * (9.0 - 0.09));
    double theta = 2.0 * M_PI * rng.u01();
    std::complex<double> alpha = std::polar(r, theta);

    // Integer coefficients in [-5, 5], degree <= 2.
    std::vector<DiophantinePolynomial::Term> terms;
    for (int degree = 0; degree <= 2; ++degree) {
      mpz_class c(rng.uniform_int(-5, 5));
      terms.push_back({c, {degree}});
    }
    DiophantinePolynomial poly = DiophantinePolynomial::from_terms(1, std::move(terms));

    double total_time =
        settings.t_min * std::exp(rng.u01() * std::log(settings.t_max / settings.t_min));

    std::vector<mpz_class> diag(static_cast<size_t>(space.dimension()));
    for (long i = 0; i < space.dimension(); ++i) {
      mpz_class v = poly.evaluate({static_cast<int>(i)});
      diag[static_cast<size_t>(i)] = v * v;
    }
    size_t ground = 0;
    bool degenerate = false;
    for (size_t i = 1; i < diag.size(); ++i)
      if (diag[i] < diag[ground]) ground = i;
    for (size_t i = 0; i < diag.size(); ++i)
      if (i != ground && diag[i] == diag[ground]) degenerate = true;
    if (degenerate) {
      results[static_cast<size_t>(trial)] = TrialResult::DegenerateSkip;
      return;
    }

    // Start from the exact ground state of the truncated H_I: the criterion
    // premises a nondegenerate initial ground state occupied at t = 0, and a
    // truncated coherent state only approximates it.
    CoherentParams params({alpha});
    HermitianOperator hi = build_HI(space, params);
    EigenSystem hi_system = eigendecompose(hi);
    double band = 1e-9 * (1.0 + hi.frobenius_norm());
    if (hi_system.energies(1) - hi_system.energies(0) <= band) {
      results[static_cast<size_t>(trial)] = TrialResult::InitialDegenerateSkip;
      return;
    }
    StateVector psi0{space, hi_system.vectors.col(0)};

    std::vector<double> p0 = measure_probabilities(psi0);
    for (size_t i = 0; i < p0.size(); ++i) {
      if (i != ground && p0[i] >= 0.5) {
        results[static_cast<size_t>(trial)] = TrialResult::PremiseSkip;
        return;
      }
    }

    HermitianOperator hp = build_HP(space, poly);
    Schedule schedule(total_time, steps_for(total_time, settings.steps_per_unit_time));
    EvolutionResult evolved = evolve(space, hi, hp, schedule, psi0);
    std::vector<double> p = measure_probabilities(evolved.final_state);

    for (size_t i = 0; i < p.size(); ++i) {
      if (i != ground && p[i] > 0.5 + kTieBand) {
        ExperimentConfig replay;
        replay.polynomial = poly.format();
        replay.alphas = {alpha};
        replay.cutoffs = {cutoff};
        replay.bc = settings.bc;
        replay.initial_state = InitialState::HiGround;
        replay.t_sweep = TSweep{total_time, 2.0, 1};
        replay.steps_per_unit_time = settings.steps_per_unit_time;
        replay.scan_grid = 9;
        replay.seed = settings.seed;

        hit_slots[static_cast<size_t>(trial)] =
            SearchHit{trial, std::move(replay), static_cast<long>(i), p[i], total_time};
        results[static_cast<size_t>(trial)] = TrialResult::Hit;
        return;
      }
    }
  });

  for (long trial = 0; trial < settings.trials; ++trial) {
    ++outcome.trials_run;
    switch (results[static_cast<size_t>(trial)]) {
      case TrialResult::Clean:
        break;
      case TrialResult::Hit:
        outcome.hits.push_back(std::move(hit_slots[static_cast<size_t>(trial)]));
        break;
      case TrialResult::DegenerateSkip:
        ++outcome.degenerate_skipped;
        break;
      case TrialResult::InitialDegenerateSkip:
        ++outcome.initial_degenerate_skipped;
        break;
      case TrialResult::PremiseSkip:
        ++outcome.premise_skipped;
        break;
    }
  }
  return outcome;
}

}  // namespace adia
