#include "adia/report.hpp"

#include <sstream>

#include "json.hpp"

namespace adia {

namespace {

using nlohmann::json;

std::string label_text(const FockSpace& space, long index) {
  std::vector<int> label = space.label_of(index);
  std::string out;
  for (size_t i = 0; i < label.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(label[i]);
  }
  return out;
}

FockSpace space_of(const ExperimentConfig& config) {
  return FockSpace(static_cast<int>(config.cutoffs.size()), config.cutoffs, config.bc);
}

json complex_json(std::complex<double> z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

json config_json(const ExperimentConfig& config) {
  json alphas = json::array();
  for (auto a : config.alphas) alphas.push_back(complex_json(a));
  json j{{"polynomial", config.polynomial},
         {"alphas", alphas},
         {"cutoff", config.cutoffs},
         {"boundary", boundary_name(config.bc)},
         {"initial_state", initial_state_name(config.initial_state)},
         {"t0", config.t_sweep.t0},
         {"t_ratio", config.t_sweep.ratio},
         {"t_count", config.t_sweep.count},
         {"steps_per_unit_time", config.steps_per_unit_time},
         {"scan_grid", config.scan_grid},
         {"seed", config.seed},
         {"tail_limit", config.tail_limit},
         {"config_hash", config_hash(config)}};
  if (config.bc.wrapped()) j["wrap_c"] = complex_json(config.bc.wrap);
  return j;
}

json scan_json(const ConditionScanReport& scan) {
  json minima = json::array();
  for (const auto& m : scan.pair_minima)
    minima.push_back(json{{"pair_i", m.i},
                          {"pair_j", m.j},
                          {"min_abs_element", m.value},
                          {"s_at_min", m.s}});
  return json{{"grid_points", scan.grid.size()},
              {"global_min", scan.global_min},
              {"global_min_s", scan.global_min_s},
              {"global_min_pair", json::array({scan.global_min_i, scan.global_min_j})},
              {"degenerate_samples", scan.degenerate_samples},
              {"commutator_norm", scan.commutator_norm},
              {"endpoints_commute", scan.endpoints_commute},
              {"min_gap", scan.min_gap},
              {"min_gap_s", scan.min_gap_s},
              {"violation_threshold", scan.violation_threshold},
              {"violation_found", scan.violation_found},
              {"pair_minima", minima}};
}

}  // namespace

std::string csv_quote(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string probabilities_csv(const ExperimentReport& report) {
  FockSpace space = space_of(report.config);
  std::ostringstream out;
  out << "T,label,probability\n";
  for (const auto& cell : report.sweep) {
    for (long n = 0; n < static_cast<long>(cell.probabilities.size()); ++n) {
      out << format_double(cell.total_time) << ","
          << csv_quote(label_text(space, n)) << ","
          << format_double(cell.probabilities[n]) << "\n";
    }
  }
  return out.str();
}

std::string condition_scan_csv(const ConditionScanReport& scan) {
  std::ostringstream out;
  out << "s,pair_i,pair_j,abs_element\n";
  for (const auto& sample : scan.table) {
    out << format_double(sample.s) << "," << sample.i << "," << sample.j << ","
        << format_double(sample.abs_element) << "\n";
  }
  return out.str();
}

std::string search_hits_csv(const SearchOutcome& outcome) {
  std::ostringstream out;
  out << "trial,seed,config_hash,violating_label,probability,T\n";
  for (const auto& hit : outcome.hits) {
    FockSpace space(static_cast<int>(hit.config.cutoffs.size()), hit.config.cutoffs,
                    hit.config.bc);
    out << hit.trial << "," << outcome.settings.seed << ","
        << config_hash(hit.config) << ","
        << csv_quote(label_text(space, hit.violating_index)) << ","
        << format_double(hit.probability) << "," << format_double(hit.total_time)
        << "\n";
  }
  return out.str();
}

std::string report_json(const ExperimentReport& report) {
  FockSpace space = space_of(report.config);

  json sweep = json::array();
  for (const auto& cell : report.sweep) {
    json j{{"T", cell.total_time},
           {"num_steps", cell.num_steps},
           {"norm_drift", cell.norm_drift},
           {"tie_inconclusive", cell.tie_inconclusive}};
    if (cell.identified) {
      j["identified_index"] = *cell.identified;
      j["identified_label"] = label_text(space, *cell.identified);
      j["identified_probability"] = cell.probabilities[*cell.identified];
    } else {
      j["identified_index"] = nullptr;
    }
    sweep.push_back(j);
  }

  json premise = json::array();
  for (long index : report.premise_violations)
    premise.push_back(json{{"index", index}, {"label", label_text(space, index)}});

  json j{{"config", config_json(report.config)},
         {"dimension", report.dimension},
         {"ground_index", report.ground_index},
         {"ground_label", label_text(space, report.ground_index)},
         {"ground_energy", report.ground_energy},
         {"ground_degenerate", report.ground_degenerate},
         {"initial_tail_mass", report.initial_tail_mass},
         {"initial_ground_degenerate", report.initial_ground_degenerate},
         {"premise_ok", report.premise_ok},
         {"premise_violations", premise},
         {"scan", scan_json(report.scan)},
         {"sweep", sweep},
         {"verdict", verdict_name(report.verdict)},
         {"has_solution", report.has_solution},
         {"identified_is_solution", report.identified_is_solution}};
  if (report.identified_index) {
    j["identified_index"] = *report.identified_index;
    j["identified_label"] = label_text(space, *report.identified_index);
  } else {
    j["identified_index"] = nullptr;
  }
  if (report.solution_point) j["solution_point"] = *report.solution_point;
  return j.dump(2) + "\n";
}

std::string search_json(const SearchOutcome& outcome) {
  json hits = json::array();
  for (const auto& hit : outcome.hits) {
    hits.push_back(json{{"trial", hit.trial},
                        {"config", config_json(hit.config)},
                        {"violating_index", hit.violating_index},
                        {"probability", hit.probability},
                        {"T", hit.total_time}});
  }
  json j{{"dimension", outcome.settings.dimension},
         {"trials_requested", outcome.settings.trials},
         {"trials_run", outcome.trials_run},
         {"seed", outcome.settings.seed},
         {"boundary", boundary_name(outcome.settings.bc)},
         {"steps_per_unit_time", outcome.settings.steps_per_unit_time},
         {"degenerate_skipped", outcome.degenerate_skipped},
         {"initial_degenerate_skipped", outcome.initial_degenerate_skipped},
         {"premise_skipped", outcome.premise_skipped},
         {"hit_count", outcome.hits.size()},
         {"hits", hits}};
  return j.dump(2) + "\n";
}

std::string manifest_json(const RunManifest& manifest) {
  json j{{"config_hash", manifest.config_hash},
         {"timestamp", manifest.timestamp},
         {"version", manifest.version},
         {"outputs", manifest.outputs}};
  return j.dump(2) + "\n";
}

}  // namespace adia
