#pragma once

#include <string>

#include "adia/criterion.hpp"
#include "adia/config.hpp"

namespace adia {

// RFC 4180 quoting: wrap in double quotes when the field contains a comma,
// quote, or newline; embedded quotes are doubled.
std::string csv_quote(const std::string& field);

// One row per (T, basis label): T,label,probability.  The label is the
// comma-joined occupation tuple, so it is always quoted for multi-mode runs.
std::string probabilities_csv(const ExperimentReport& report);

// One row per sampled grid point and eigenpair: s,pair_i,pair_j,abs_element.
std::string condition_scan_csv(const ConditionScanReport& scan);

// One row per violation candidate found by the randomized search.
std::string search_hits_csv(const SearchOutcome& outcome);

std::string report_json(const ExperimentReport& report);
std::string search_json(const SearchOutcome& outcome);
std::string manifest_json(const RunManifest& manifest);

}  // namespace adia
