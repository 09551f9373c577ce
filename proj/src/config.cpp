#include "adia/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "adia/errors.hpp"
#include "adia/polynomial.hpp"

namespace adia {

namespace {

std::string trim(const std::string& s) {
  size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_real(const std::string& text, const std::string& what) {
  std::string t = trim(text);
  if (t.empty()) throw ConfigError(what + ": empty number");
  const char* begin = t.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + t.size())
    throw ConfigError(what + ": cannot parse number '" + t + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

double canonical_zero(double v) { return v == 0.0 ? 0.0 : v; }

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty complex literal");

  if (t.back() != 'i' && t.back() != 'I')
    return {parse_real(t, "complex literal"), 0.0};

  std::string body = t.substr(0, t.size() - 1);
  // Split before the sign of the imaginary part, skipping exponent signs.
  size_t pos = std::string::npos;
  for (size_t k = body.size(); k-- > 1;) {
    char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      pos = k;
      break;
    }
  }
  std::string real_part, imag_part;
  if (pos == std::string::npos) {
    real_part = "0";
    imag_part = body;
  } else {
    real_part = body.substr(0, pos);
    imag_part = body.substr(pos);
  }
  if (imag_part.empty() || imag_part == "+")
    imag_part = "1";
  else if (imag_part == "-")
    imag_part = "-1";
  return {parse_real(real_part, "complex literal"), parse_real(imag_part, "complex literal")};
}

std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), canonical_zero(value));
  return std::string(buffer, end);
}

std::string format_complex(std::complex<double> value) {
  double re = canonical_zero(value.real());
  double im = canonical_zero(value.imag());
  std::string out = format_double(re);
  out += im < 0.0 ? "-" : "+";
  out += format_double(std::abs(im));
  out += "i";
  return out;
}

BoundaryCondition parse_boundary(const std::string& name, std::complex<double> wrap) {
  std::string lower;
  for (char c : trim(name)) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "abrupt") return BoundaryCondition::abrupt();
  if (lower == "periodic") return BoundaryCondition::periodic(wrap);
  if (lower == "antiperiodic" || lower == "anti-periodic")
    return BoundaryCondition::antiperiodic(wrap);
  throw ConfigError("unknown boundary condition '" + name +
                    "' (expected abrupt, periodic, or antiperiodic)");
}

std::string boundary_name(const BoundaryCondition& bc) {
  switch (bc.scheme) {
    case Scheme::Abrupt: return "abrupt";
    case Scheme::Periodic: return "periodic";
    case Scheme::AntiPeriodic: return "antiperiodic";
  }
  return "unknown";
}

namespace {

std::map<std::string, std::string> read_section(const std::string& text, const std::string& origin,
                                                const std::string& expected_section) {
  std::map<std::string, std::string> values;
  std::string section;
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    size_t hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(line_number) + ": malformed section");
      section = trim(line.substr(1, line.size() - 2));
      if (section != expected_section)
        throw ConfigError(origin + ":" + std::to_string(line_number) + ": unknown section [" +
                          section + "]");
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line_number) + ": expected key = value");
    if (section.empty())
      throw ConfigError(origin + ":" + std::to_string(line_number) + ": key outside the [" +
                        expected_section + "] section");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (values.count(key))
      throw ConfigError(origin + ": duplicate key '" + key + "'");
    values[key] = value;
  }
  return values;
}

std::string read_file_text(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream content;
  content << file.rdbuf();
  return content.str();
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  std::map<std::string, std::string> values = read_section(text, origin, "experiment");

  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    std::string v = it->second;
    values.erase(it);
    return v;
  };
  auto require = [&](const char* key) -> std::string {
    auto v = take(key);
    if (!v) throw ConfigError(origin + ": missing required key '" + key + "'");
    return *v;
  };

  ExperimentConfig config;
  config.polynomial = require("polynomial");

  for (const std::string& part : split(require("alphas"), ','))
    config.alphas.push_back(parse_complex(part));

  for (const std::string& part : split(require("cutoff"), ',')) {
    double v = parse_real(part, "cutoff");
    int c = static_cast<int>(v);
    if (v != c) throw ConfigError(origin + ": cutoff entries must be integers");
    config.cutoffs.push_back(c);
  }

  std::string boundary = require("boundary");
  auto wrap_text = take("wrap_c");
  std::complex<double> wrap = wrap_text ? parse_complex(*wrap_text)
                                        : std::complex<double>{1.0, 0.0};
  config.bc = parse_boundary(boundary, wrap);
  if (wrap_text && config.bc.scheme == Scheme::Abrupt)
    throw ConfigError(origin + ": wrap_c has no meaning for the abrupt boundary condition");

  if (auto v = take("initial_state")) {
    if (*v == "coherent")
      config.initial_state = InitialState::Coherent;
    else if (*v == "hi_ground")
      config.initial_state = InitialState::HiGround;
    else
      throw ConfigError(origin + ": initial_state must be 'coherent' or 'hi_ground'");
  }

  if (auto v = take("t0")) config.t_sweep.t0 = parse_real(*v, "t0");
  if (auto v = take("t_ratio")) config.t_sweep.ratio = parse_real(*v, "t_ratio");
  if (auto v = take("t_count")) config.t_sweep.count = static_cast<int>(parse_real(*v, "t_count"));
  if (auto v = take("steps_per_unit_time"))
    config.steps_per_unit_time = parse_real(*v, "steps_per_unit_time");
  if (auto v = take("scan_grid")) config.scan_grid = static_cast<int>(parse_real(*v, "scan_grid"));
  if (auto v = take("seed")) {
    std::string t = trim(*v);
    std::uint64_t seed = 0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), seed);
    if (ec != std::errc{} || end != t.data() + t.size())
      throw ConfigError(origin + ": seed must be an unsigned integer");
    config.seed = seed;
  }
  if (auto v = take("tail_limit")) config.tail_limit = parse_real(*v, "tail_limit");

  if (!values.empty())
    throw ConfigError(origin + ": unknown key '" + values.begin()->first + "'");

  config.validate();
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  return parse_config_text(read_file_text(path), path);
}

SearchSettings parse_search_config_text(const std::string& text, const std::string& origin) {
  std::map<std::string, std::string> values = read_section(text, origin, "search");

  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    std::string v = it->second;
    values.erase(it);
    return v;
  };

  SearchSettings settings;
  if (auto v = take("dimension")) settings.dimension = static_cast<int>(parse_real(*v, "dimension"));
  if (auto v = take("trials")) settings.trials = static_cast<long>(parse_real(*v, "trials"));
  if (auto v = take("seed")) {
    std::string t = trim(*v);
    std::uint64_t seed = 0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), seed);
    if (ec != std::errc{} || end != t.data() + t.size())
      throw ConfigError(origin + ": seed must be an unsigned integer");
    settings.seed = seed;
  }
  std::string boundary = take("boundary").value_or("abrupt");
  auto wrap_text = take("wrap_c");
  std::complex<double> wrap = wrap_text ? parse_complex(*wrap_text)
                                        : std::complex<double>{1.0, 0.0};
  settings.bc = parse_boundary(boundary, wrap);
  if (wrap_text && settings.bc.scheme == Scheme::Abrupt)
    throw ConfigError(origin + ": wrap_c has no meaning for the abrupt boundary condition");
  if (auto v = take("steps_per_unit_time"))
    settings.steps_per_unit_time = parse_real(*v, "steps_per_unit_time");
  if (auto v = take("t_min")) settings.t_min = parse_real(*v, "t_min");
  if (auto v = take("t_max")) settings.t_max = parse_real(*v, "t_max");

  if (!values.empty())
    throw ConfigError(origin + ": unknown key '" + values.begin()->first + "'");

  if (settings.dimension < 2) throw ConfigError(origin + ": dimension must be at least 2");
  if (settings.trials < 1) throw ConfigError(origin + ": trials must be positive");
  if (!(settings.steps_per_unit_time > 0))
    throw ConfigError(origin + ": steps_per_unit_time must be positive");
  if (!(settings.t_min > 0) || !(settings.t_max >= settings.t_min))
    throw ConfigError(origin + ": need 0 < t_min <= t_max");
  return settings;
}

SearchSettings load_search_config_file(const std::string& path) {
  return parse_search_config_text(read_file_text(path), path);
}

std::string dump_config(const ExperimentConfig& config) {
  config.validate();
  // Canonicalize the polynomial spelling so the hash ignores formatting.
  std::string poly = DiophantinePolynomial::parse(config.polynomial,
                                                  static_cast<int>(config.cutoffs.size()))
                         .format();
  std::ostringstream out;
  out << "[experiment]\n";
  out << "polynomial = " << poly << "\n";
  out << "alphas = ";
  for (size_t i = 0; i < config.alphas.size(); ++i)
    out << (i ? "," : "") << format_complex(config.alphas[i]);
  out << "\n";
  out << "cutoff = ";
  for (size_t i = 0; i < config.cutoffs.size(); ++i)
    out << (i ? "," : "") << config.cutoffs[i];
  out << "\n";
  out << "boundary = " << boundary_name(config.bc) << "\n";
  if (config.bc.wrapped()) out << "wrap_c = " << format_complex(config.bc.wrap) << "\n";
  out << "initial_state = " << initial_state_name(config.initial_state) << "\n";
  out << "t0 = " << format_double(config.t_sweep.t0) << "\n";
  out << "t_ratio = " << format_double(config.t_sweep.ratio) << "\n";
  out << "t_count = " << config.t_sweep.count << "\n";
  out << "steps_per_unit_time = " << format_double(config.steps_per_unit_time) << "\n";
  out << "scan_grid = " << config.scan_grid << "\n";
  out << "seed = " << config.seed << "\n";
  out << "tail_limit = " << format_double(config.tail_limit) << "\n";
  return out.str();
}

std::string config_hash(const ExperimentConfig& config) {
  std::string dump = dump_config(config);
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buffer);
}

RunManifest make_manifest(const ExperimentConfig& config, std::vector<std::string> outputs) {
  RunManifest manifest;
  manifest.config_hash = config_hash(config);
  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  manifest.timestamp = stamp;
  manifest.version = "adia 0.1.0";
  manifest.outputs = std::move(outputs);
  return manifest;
}

}  // namespace adia
