#include "adia/cli.hpp"

#include <algorithm>
#include <complex>
#include <filesystem>
#include <fstream>
#include <utility>

#include "CLI11.hpp"

#include "adia/config.hpp"
#include "adia/criterion.hpp"
#include "adia/errors.hpp"
#include "adia/report.hpp"
#include "adia/spectral.hpp"

namespace adia {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write '" + path.string() + "'");
  file << content;
  if (!file) throw ConfigError("write failed for '" + path.string() + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

// Shared inline flags for scan/probe: one polynomial over K modes with
// per-mode alpha and cutoff.
struct InlineProblem {
  std::string poly_text;
  std::string alpha_text = "1";
  std::string nmax_text = "8";
  std::string bc_name = "abrupt";
  std::string wrap_text;

  void attach(CLI::App* app) {
    app->add_option("--poly", poly_text, "polynomial, e.g. \"x1-2\"")->required();
    app->add_option("--alpha", alpha_text, "coherent parameter(s), comma-separated a+bi");
    app->add_option("--nmax", nmax_text, "per-mode cutoff(s), comma-separated");
    app->add_option("--bc", bc_name, "abrupt | periodic | antiperiodic");
    app->add_option("--wrap-c", wrap_text, "wrap coefficient for periodic/antiperiodic");
  }

  struct Built {
    DiophantinePolynomial poly;
    CoherentParams params;
    FockSpace space;
    HermitianOperator HI;
    HermitianOperator HP;
  };

  Built build() const {
    std::vector<std::complex<double>> alphas;
    for (const std::string& part : split_list(alpha_text)) alphas.push_back(parse_complex(part));
    std::vector<int> cutoffs;
    for (const std::string& part : split_list(nmax_text)) cutoffs.push_back(std::stoi(part));
    if (alphas.size() != cutoffs.size())
      throw ConfigError("--alpha and --nmax must list the same number of modes");

    std::complex<double> wrap = wrap_text.empty() ? std::complex<double>{1.0, 0.0}
                                                  : parse_complex(wrap_text);
    BoundaryCondition bc = parse_boundary(bc_name, wrap);
    if (!wrap_text.empty() && bc.scheme == Scheme::Abrupt)
      throw ConfigError("--wrap-c has no meaning for the abrupt boundary condition");

    int num_modes = static_cast<int>(alphas.size());
    DiophantinePolynomial poly = DiophantinePolynomial::parse(poly_text, num_modes);
    FockSpace space(num_modes, cutoffs, bc);
    CoherentParams params(alphas);
    HermitianOperator HI = build_HI(space, params);
    HermitianOperator HP = build_HP(space, poly);
    return Built{std::move(poly), std::move(params), std::move(space), std::move(HI),
                 std::move(HP)};
  }
};

int command_run(const std::string& config_path, const std::string& out_dir, bool dump_only,
                bool assert_match, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = load_config_file(config_path);
  if (dump_only) {
    out << dump_config(config);
    return 0;
  }

  ExperimentReport report = run_experiment(config);

  fs::path dir(out_dir);
  fs::create_directories(dir);
  write_file(dir / "report.json", report_json(report));
  write_file(dir / "probabilities.csv", probabilities_csv(report));
  write_file(dir / "condition_scan.csv", condition_scan_csv(report.scan));
  RunManifest manifest = make_manifest(
      config, {"report.json", "probabilities.csv", "condition_scan.csv", "manifest.json"});
  write_file(dir / "manifest.json", manifest_json(manifest));

  out << "verdict: " << verdict_name(report.verdict) << "\n";
  out << "outputs: " << (dir / "report.json").string() << "\n";
  if (assert_match && report.verdict != Verdict::Match) {
    err << "assertion failed: verdict is " << verdict_name(report.verdict) << "\n";
    return 3;
  }
  return 0;
}

int command_scan(const InlineProblem& problem, int grid, const std::string& out_path,
                 std::ostream& out) {
  auto built = problem.build();
  ConditionScanReport scan = condition_scan(built.HI, built.HP, grid);
  std::string csv = condition_scan_csv(scan);
  if (out_path.empty()) {
    out << csv;
  } else {
    write_file(out_path, csv);
    out << "wrote " << out_path << "\n";
  }
  out << "# global_min = " << format_double(scan.global_min) << " at s = "
      << format_double(scan.global_min_s) << " pair (" << scan.global_min_i << ","
      << scan.global_min_j << ")\n";
  out << "# violation_found = " << (scan.violation_found ? "true" : "false") << "\n";
  return 0;
}

int command_search(const std::string& config_path, const std::string& out_dir,
                   std::ostream& out) {
  SearchSettings settings = load_search_config_file(config_path);
  SearchOutcome outcome = counterexample_search(settings);

  fs::path dir(out_dir);
  fs::create_directories(dir);
  write_file(dir / "search_report.json", search_json(outcome));
  write_file(dir / "search_hits.csv", search_hits_csv(outcome));
  for (const auto& hit : outcome.hits)
    write_file(dir / ("hit_" + std::to_string(hit.trial) + ".cfg"), dump_config(hit.config));

  out << "trials: " << outcome.trials_run << "  hits: " << outcome.hits.size()
      << "  degenerate skipped: " << outcome.degenerate_skipped
      << "  premise skipped: " << outcome.premise_skipped << "\n";
  out << "outputs: " << (dir / "search_report.json").string() << "\n";
  return 0;
}

int command_probe(const InlineProblem& problem, double s, int eigenindex,
                  const std::string& pair_text, int upto, std::ostream& out) {
  auto built = problem.build();
  if (built.space.num_modes() != 1)
    throw ConfigError("probe requires a single-mode problem");

  HermitianOperator H = interpolate(built.HI, built.HP, s);
  EigenSystem system = eigendecompose(H);
  if (eigenindex < 0 || eigenindex >= system.energies.size())
    throw ConfigError("--eigenindex out of range");

  std::vector<double> residual =
      recurrence_residual(system, eigenindex, s, built.params, built.poly, built.space);
  double max_residual = 0.0;
  for (double r : residual) max_residual = std::max(max_residual, r);

  std::pair<int, int> pair{eigenindex, eigenindex};
  if (!pair_text.empty()) {
    auto parts = split_list(pair_text);
    if (parts.size() != 2) throw ConfigError("--pair expects i,j");
    pair = {std::stoi(parts[0]), std::stoi(parts[1])};
  }
  if (pair.first < 0 || pair.first >= system.energies.size() || pair.second < 0 ||
      pair.second >= system.energies.size())
    throw ConfigError("--pair indices out of range");
  PartialSums sums = partial_sum_probe(system, pair, built.poly, upto);

  out << "s = " << format_double(s) << "\n";
  out << "energy[" << eigenindex << "] = " << format_double(system.energies[eigenindex]) << "\n";
  out << "recurrence_max_residual = " << format_double(max_residual) << "\n";
  out << "pair = (" << pair.first << "," << pair.second << ")  upto = " << upto << "\n";
  out << "partial_overlap = " << format_complex(sums.overlap) << "\n";
  out << "partial_weighted = " << format_complex(sums.weighted) << "\n";
  out << "bounded_variation = " << format_double(sums.bounded_variation) << "\n";
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"adiabatic identification-criterion simulator"};
  app.require_subcommand(1);

  std::string run_config, run_out = ".";
  bool run_dump = false, run_assert = false;
  CLI::App* run = app.add_subcommand("run", "execute a full experiment from a config file");
  run->add_option("--config", run_config, "experiment config path")->required();
  run->add_option("--out", run_out, "output directory");
  run->add_flag("--dump-config", run_dump, "print the canonical config and exit");
  run->add_flag("--assert-match", run_assert, "exit 3 unless the verdict is Match");

  InlineProblem scan_problem;
  int scan_grid = 19;
  std::string scan_out;
  CLI::App* scan = app.add_subcommand("scan", "tabulate |<e|H_P - H_I|f>| over the s grid");
  scan_problem.attach(scan);
  scan->add_option("--grid", scan_grid, "interior grid size G");
  scan->add_option("--out", scan_out, "CSV output path (default: stdout)");

  std::string search_config, search_out = ".";
  CLI::App* search = app.add_subcommand("search", "randomized hunt for criterion violations");
  search->add_option("--config", search_config, "search config path")->required();
  search->add_option("--out", search_out, "output directory");

  InlineProblem probe_problem;
  double probe_s = 0.5;
  int probe_eigenindex = 0;
  int probe_upto = 0;
  std::string probe_pair;
  CLI::App* probe = app.add_subcommand("probe", "recurrence residual and partial sums at one s");
  probe_problem.attach(probe);
  probe->add_option("--s", probe_s, "interpolation parameter in [0,1)");
  probe->add_option("--eigenindex", probe_eigenindex, "eigenvector index (ascending energy)");
  probe->add_option("--pair", probe_pair, "eigenpair i,j for the partial sums");
  probe->add_option("--upto", probe_upto, "partial-sum truncation index");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (run->parsed()) return command_run(run_config, run_out, run_dump, run_assert, out, err);
    if (scan->parsed()) return command_scan(scan_problem, scan_grid, scan_out, out);
    if (search->parsed()) return command_search(search_config, search_out, out);
    if (probe->parsed())
      return command_probe(probe_problem, probe_s, probe_eigenindex, probe_pair, probe_upto, out);
  } catch (const NumericGuardError& e) {
    err << "numerical guard: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace adia
