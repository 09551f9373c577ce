#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "adia/criterion.hpp"

namespace adia {

// Complex literals in configs and flags use the form "a+bi" ("1+0i",
// "-1.5-0.5i"); pure-real ("2") and pure-imaginary ("2i", "-i") forms are
// accepted on input.
std::complex<double> parse_complex(const std::string& text);
std::string format_complex(std::complex<double> value);

// Shortest representation that round-trips the exact double.
std::string format_double(double value);

BoundaryCondition parse_boundary(const std::string& name, std::complex<double> wrap);
std::string boundary_name(const BoundaryCondition& bc);

// Flat sectioned key=value config text. Unknown keys are errors; origin
// names the file in messages.
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig load_config_file(const std::string& path);

// Search configs live in a [search] section with keys matching the
// SearchSettings field names.
SearchSettings parse_search_config_text(const std::string& text, const std::string& origin);
SearchSettings load_search_config_file(const std::string& path);

// Canonical form: fixed key order, canonicalized polynomial, round-trip
// numeric formatting. dump -> parse -> dump is a fixed point.
std::string dump_config(const ExperimentConfig& config);

// FNV-1a 64 over the canonical dump, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

struct RunManifest {
  std::string config_hash;
  std::string timestamp;  // UTC, ISO 8601
  std::string version;
  std::vector<std::string> outputs;
};

RunManifest make_manifest(const ExperimentConfig& config, std::vector<std::string> outputs);

}  // namespace adia
