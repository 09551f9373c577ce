#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "adia/cli.hpp"
#include "adia/config.hpp"
#include "adia/errors.hpp"

using namespace adia;
using Complex = std::complex<double>;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli_main(args, out, err);
  return CliResult{code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("adia_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_text(const fs::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  file << content;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream content;
  content << file.rdbuf();
  return content.str();
}

const char* kDemoConfig =
    "# demo: smallest polynomial with a root under the cutoff\n"
    "[experiment]\n"
    "polynomial = x1 - 2\n"
    "alphas = 1+0i\n"
    "cutoff = 12\n"
    "boundary = antiperiodic\n"
    "wrap_c = 1+0i\n"
    "t0 = 1\n"
    "t_ratio = 2\n"
    "t_count = 8\n"
    "steps_per_unit_time = 100\n"
    "scan_grid = 19\n";

}  // namespace

TEST_CASE("complex literals parse in every documented form") {
  CHECK(parse_complex("2") == Complex(2.0, 0.0));
  CHECK(parse_complex("-3.5") == Complex(-3.5, 0.0));
  CHECK(parse_complex("2i") == Complex(0.0, 2.0));
  CHECK(parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(parse_complex("i") == Complex(0.0, 1.0));
  CHECK(parse_complex("1+0i") == Complex(1.0, 0.0));
  CHECK(parse_complex("-1.5-0.5i") == Complex(-1.5, -0.5));
  CHECK(parse_complex(" 0.25+1i ") == Complex(0.25, 1.0));
  CHECK(parse_complex("1e-3+2e2i") == Complex(1e-3, 2e2));
  CHECK(parse_complex("2.5E-1i") == Complex(0.0, 0.25));
  CHECK_THROWS_AS(parse_complex(""), ConfigError);
  CHECK_THROWS_AS(parse_complex("fish"), ConfigError);
  CHECK_THROWS_AS(parse_complex("1+fishi"), ConfigError);
}

TEST_CASE("complex and double formatting round-trips exactly") {
  for (Complex z : {Complex(1.0, 0.0), Complex(-2.25, 3.5), Complex(0.0, -1.0),
                    Complex(1.0 / 3.0, -1e-17), Complex(0.0, 0.0)}) {
    CHECK(parse_complex(format_complex(z)) == z);
  }
  CHECK(format_complex(Complex(1.0, 0.0)) == "1+0i");
  CHECK(format_complex(Complex(0.0, -2.0)) == "0-2i");

  for (double v : {0.1, -0.1, 1.0 / 3.0, 6.172944815885362e-06, 1e300, 0.0}) {
    char* end = nullptr;
    std::string text = format_double(v);
    CHECK(std::strtod(text.c_str(), &end) == v);
  }
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("boundary names map to schemes both ways") {
  CHECK(parse_boundary("abrupt", Complex(1.0)).scheme == Scheme::Abrupt);
  CHECK(parse_boundary("Periodic", Complex(2.0)).scheme == Scheme::Periodic);
  CHECK(parse_boundary("anti-periodic", Complex(1.0)).scheme == Scheme::AntiPeriodic);
  CHECK(boundary_name(BoundaryCondition::abrupt()) == std::string("abrupt"));
  CHECK(boundary_name(BoundaryCondition::periodic(Complex(1.0))) == std::string("periodic"));
  CHECK(boundary_name(BoundaryCondition::antiperiodic(Complex(1.0))) ==
        std::string("antiperiodic"));
  CHECK_THROWS_AS(parse_boundary("moebius", Complex(1.0)), ConfigError);
}

TEST_CASE("config text parses, dumps canonically, and hashes stably") {
  auto config = parse_config_text(kDemoConfig, "demo");
  CHECK(config.polynomial == "x1 - 2");
  CHECK(config.alphas == std::vector<Complex>{Complex(1.0)});
  CHECK(config.cutoffs == std::vector<int>{12});
  CHECK(config.bc.scheme == Scheme::AntiPeriodic);
  CHECK(config.bc.wrap == Complex(1.0));
  CHECK(config.initial_state == InitialState::Coherent);
  CHECK(config.t_sweep.t0 == 1.0);
  CHECK(config.t_sweep.ratio == 2.0);
  CHECK(config.t_sweep.count == 8);
  CHECK(config.steps_per_unit_time == 100.0);
  CHECK(config.scan_grid == 19);
  CHECK(config.seed == 0);
  CHECK(config.tail_limit == 1e-6);

  std::string dumped = dump_config(config);
  auto reparsed = parse_config_text(dumped, "dumped");
  CHECK(dump_config(reparsed) == dumped);
  CHECK(config_hash(reparsed) == config_hash(config));
  CHECK(config_hash(config).size() == 16);
  CHECK(config_hash(config).find_first_not_of("0123456789abcdef") == std::string::npos);

  // Spelling-insensitive hash: the canonical polynomial form drives it.
  auto respelled = config;
  respelled.polynomial = "x1-2";
  CHECK(config_hash(respelled) == config_hash(config));
}

TEST_CASE("config parsing reports malformed input precisely") {
  CHECK_THROWS_WITH_AS(parse_config_text("polynomial = x1\n", "orig"),
                       doctest::Contains("outside"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config_text("[experiment]\npolynomial = x1\nboundary = abrupt\ncutoff = 4\n",
                        "orig"),
      doctest::Contains("alphas"), ConfigError);
  // Unknown keys surface once the required ones are satisfied.
  std::string unknown =
      "[experiment]\npolynomial = x1 - 2\nalphas = 1\ncutoff = 8\n"
      "boundary = abrupt\nnonsense = 1\n";
  CHECK_THROWS_WITH_AS(parse_config_text(unknown, "orig"),
                       doctest::Contains("unknown key"), ConfigError);
  std::string dup =
      "[experiment]\npolynomial = x1\npolynomial = x1\n";
  CHECK_THROWS_WITH_AS(parse_config_text(dup, "orig"), doctest::Contains("duplicate"),
                       ConfigError);
  std::string abrupt_wrap =
      "[experiment]\npolynomial = x1 - 2\nalphas = 1\ncutoff = 8\n"
      "boundary = abrupt\nwrap_c = 1+0i\n";
  CHECK_THROWS_WITH_AS(parse_config_text(abrupt_wrap, "orig"),
                       doctest::Contains("wrap_c"), ConfigError);
  std::string bad_seed =
      "[experiment]\npolynomial = x1 - 2\nalphas = 1\ncutoff = 8\n"
      "boundary = abrupt\nseed = -3\n";
  CHECK_THROWS_AS(parse_config_text(bad_seed, "orig"), ConfigError);
  std::string bad_section = "[banquet]\nkey = 1\n";
  CHECK_THROWS_WITH_AS(parse_config_text(bad_section, "orig"),
                       doctest::Contains("unknown section"), ConfigError);
}

TEST_CASE("search configs supply defaults and validate ranges") {
  auto settings = parse_search_config_text("[search]\n", "orig");
  CHECK(settings.dimension == 5);
  CHECK(settings.trials == 10000);
  CHECK(settings.seed == 0);
  CHECK(settings.bc.scheme == Scheme::Abrupt);
  CHECK(settings.steps_per_unit_time == 20.0);
  CHECK(settings.t_min == 1.0);
  CHECK(settings.t_max == 64.0);

  auto custom = parse_search_config_text(
      "[search]\ndimension = 7\ntrials = 123\nseed = 9\nboundary = antiperiodic\n"
      "wrap_c = 0+1i\nsteps_per_unit_time = 40\nt_min = 2\nt_max = 32\n",
      "orig");
  CHECK(custom.dimension == 7);
  CHECK(custom.trials == 123);
  CHECK(custom.seed == 9);
  CHECK(custom.bc.scheme == Scheme::AntiPeriodic);
  CHECK(custom.bc.wrap == Complex(0.0, 1.0));
  CHECK(custom.steps_per_unit_time == 40.0);
  CHECK(custom.t_min == 2.0);
  CHECK(custom.t_max == 32.0);

  CHECK_THROWS_AS(parse_search_config_text("[search]\ndimension = 1\n", "orig"),
                  ConfigError);
  CHECK_THROWS_AS(parse_search_config_text("[search]\nt_min = 9\nt_max = 3\n", "orig"),
                  ConfigError);
  CHECK_THROWS_AS(parse_search_config_text("[search]\nbogus = 1\n", "orig"), ConfigError);
}

TEST_CASE("manifest carries the config hash and a UTC timestamp") {
  auto config = parse_config_text(kDemoConfig, "demo");
  auto manifest = make_manifest(config, {"report.json", "manifest.json"});
  CHECK(manifest.config_hash == config_hash(config));
  CHECK(manifest.version == "adia 0.1.0");
  REQUIRE(manifest.timestamp.size() == 20);
  CHECK(manifest.timestamp[4] == '-');
  CHECK(manifest.timestamp[10] == 'T');
  CHECK(manifest.timestamp.back() == 'Z');
  CHECK(manifest.outputs == std::vector<std::string>{"report.json", "manifest.json"});
}

TEST_CASE("cli help and usage errors") {
  auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("run") != std::string::npos);
  CHECK(help.out.find("scan") != std::string::npos);

  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"transmogrify"}).code == 1);
  CHECK(run_cli({"run"}).code == 1);  // --config required
  auto unknown_flag = run_cli({"scan", "--poly", "x1-2", "--frobnicate"});
  CHECK(unknown_flag.code == 1);
}

TEST_CASE("run executes the demo end to end and writes all artifacts") {
  auto dir = scratch_dir("run_demo");
  auto cfg = write_text(dir / "demo.cfg", kDemoConfig);
  auto out_dir = dir / "out";
  auto result =
      run_cli({"run", "--config", cfg.string(), "--out", out_dir.string(), "--assert-match"});
  CHECK(result.code == 0);
  CHECK(result.out.find("verdict: match") != std::string::npos);

  auto report = nlohmann::json::parse(slurp(out_dir / "report.json"));
  CHECK(report["verdict"] == "match");
  CHECK(report["dimension"] == 13);
  CHECK(report["ground_index"] == 2);
  CHECK(report["identified_index"] == 2);
  CHECK(report["has_solution"] == true);
  CHECK(report["identified_is_solution"] == true);
  CHECK(report["config"]["config_hash"] ==
        config_hash(parse_config_text(kDemoConfig, "demo")));

  std::string probabilities = slurp(out_dir / "probabilities.csv");
  CHECK(probabilities.rfind("T,label,probability\n", 0) == 0);
  // 8 sweep cells x 13 labels + header.
  CHECK(std::count(probabilities.begin(), probabilities.end(), '\n') == 1 + 8 * 13);

  std::string scan_csv = slurp(out_dir / "condition_scan.csv");
  CHECK(scan_csv.rfind("s,pair_i,pair_j,abs_element\n", 0) == 0);

  auto manifest = nlohmann::json::parse(slurp(out_dir / "manifest.json"));
  CHECK(manifest["config_hash"] == config_hash(parse_config_text(kDemoConfig, "demo")));
  CHECK(manifest["version"] == "adia 0.1.0");
  fs::remove_all(dir);
}

TEST_CASE("dump-config prints the canonical fixed point") {
  auto dir = scratch_dir("dump");
  auto cfg = write_text(dir / "demo.cfg", kDemoConfig);
  auto first = run_cli({"run", "--config", cfg.string(), "--dump-config"});
  CHECK(first.code == 0);
  CHECK(first.out.find("[experiment]") == 0);
  CHECK(first.out.find("initial_state = coherent") != std::string::npos);

  auto canon = write_text(dir / "canon.cfg", first.out);
  auto second = run_cli({"run", "--config", canon.string(), "--dump-config"});
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
  fs::remove_all(dir);
}

TEST_CASE("missing config file exits 1 and names the path") {
  auto result = run_cli({"run", "--config", "/no/such/place.cfg"});
  CHECK(result.code == 1);
  CHECK(result.err.find("/no/such/place.cfg") != std::string::npos);
}

TEST_CASE("assert-match exits 3 when nothing is identified") {
  auto dir = scratch_dir("mismatch");
  std::string short_cfg =
      "[experiment]\npolynomial = x1 - 2\nalphas = 1+0i\ncutoff = 12\n"
      "boundary = antiperiodic\nt0 = 1\nt_count = 1\nsteps_per_unit_time = 100\n"
      "scan_grid = 9\n";
  auto cfg = write_text(dir / "short.cfg", short_cfg);
  auto out_dir = dir / "out";
  auto plain = run_cli({"run", "--config", cfg.string(), "--out", out_dir.string()});
  CHECK(plain.code == 0);
  CHECK(plain.out.find("verdict: none-identified") != std::string::npos);
  auto asserted = run_cli(
      {"run", "--config", cfg.string(), "--out", out_dir.string(), "--assert-match"});
  CHECK(asserted.code == 3);
  CHECK(asserted.err.find("none-identified") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("numerical guard failures exit 2") {
  auto dir = scratch_dir("guard");
  // alpha=1 against cutoff 8 leaves more than 1e-6 of coherent tail.
  std::string fat_tail =
      "[experiment]\npolynomial = x1 - 2\nalphas = 1+0i\ncutoff = 8\n"
      "boundary = abrupt\nt0 = 1\nt_count = 1\nscan_grid = 5\n";
  auto cfg = write_text(dir / "fat.cfg", fat_tail);
  auto result = run_cli({"run", "--config", cfg.string(), "--out", (dir / "out").string()});
  CHECK(result.code == 2);
  CHECK(result.err.find("tail mass") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("scan emits CSV with the summary trailer") {
  auto result = run_cli({"scan", "--poly", "x1-2", "--alpha", "1+0i", "--nmax", "8",
                         "--bc", "antiperiodic", "--grid", "19"});
  CHECK(result.code == 0);
  CHECK(result.out.rfind("s,pair_i,pair_j,abs_element\n", 0) == 0);
  CHECK(result.out.find("# global_min = 6.17294481588") != std::string::npos);
  CHECK(result.out.find("# violation_found = false") != std::string::npos);

  auto dir = scratch_dir("scan_out");
  auto to_file = run_cli({"scan", "--poly", "x1-2", "--alpha", "1+0i", "--nmax", "8",
                          "--bc", "antiperiodic", "--grid", "19", "--out",
                          (dir / "scan.csv").string()});
  CHECK(to_file.code == 0);
  std::string csv = slurp(dir / "scan.csv");
  CHECK(csv.rfind("s,pair_i,pair_j,abs_element\n", 0) == 0);
  // 19 grid points x 9*8/2 pairs + header.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 19 * 36);
  fs::remove_all(dir);
}

TEST_CASE("probe reports the recurrence residual and partial sums") {
  auto result = run_cli({"probe", "--poly", "x1-2", "--alpha", "1+0i", "--nmax", "8",
                         "--bc", "antiperiodic", "--s", "0.5", "--eigenindex", "0",
                         "--pair", "0,1", "--upto", "10"});
  CHECK(result.code == 0);
  CHECK(result.out.find("bounded_variation = 68") != std::string::npos);
  CHECK(result.out.find("recurrence_max_residual = ") != std::string::npos);
  // The residual line should carry a tiny number (e-14 or smaller scale).
  CHECK(result.out.find("pair = (0,1)") != std::string::npos);

  auto bad = run_cli({"probe", "--poly", "x1-2", "--alpha", "1+0i", "--nmax", "8",
                      "--bc", "abrupt", "--s", "1.0"});
  CHECK(bad.code == 1);  // s = 1 violates the probe precondition
}

TEST_CASE("search writes report, csv, and per-hit replay configs") {
  auto dir = scratch_dir("search");
  auto cfg = write_text(dir / "search.cfg",
                        "[search]\ndimension = 2\ntrials = 60\nseed = 42\n"
                        "boundary = abrupt\n");
  auto out_dir = dir / "out";
  auto result = run_cli({"search", "--config", cfg.string(), "--out", out_dir.string()});
  CHECK(result.code == 0);
  CHECK(result.out.find("trials: 60") != std::string::npos);

  auto report = nlohmann::json::parse(slurp(out_dir / "search_report.json"));
  CHECK(report["trials_run"] == 60);
  CHECK(report["dimension"] == 2);
  CHECK(report["hit_count"] == 0);
  CHECK(report["hits"].empty());
  std::string hits_csv = slurp(out_dir / "search_hits.csv");
  CHECK(hits_csv == "trial,seed,config_hash,violating_label,probability,T\n");

  // Dimension-5 abrupt search over a slice known to contain hits writes one
  // replay config per hit, each loadable as an experiment config.
  auto cfg5 = write_text(dir / "search5.cfg",
                         "[search]\ndimension = 5\ntrials = 2000\nseed = 42\n"
                         "boundary = abrupt\n");
  auto out5 = dir / "out5";
  auto result5 = run_cli({"search", "--config", cfg5.string(), "--out", out5.string()});
  CHECK(result5.code == 0);
  auto report5 = nlohmann::json::parse(slurp(out5 / "search_report.json"));
  REQUIRE(report5["hit_count"].get<long>() > 0);
  long first_trial = report5["hits"][0]["trial"].get<long>();
  auto hit_cfg = load_config_file((out5 / ("hit_" + std::to_string(first_trial) + ".cfg")).string());
  CHECK(hit_cfg.initial_state == InitialState::HiGround);
  CHECK(hit_cfg.cutoffs == std::vector<int>{4});
  fs::remove_all(dir);
}
