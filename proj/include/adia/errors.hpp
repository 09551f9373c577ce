#pragma once

#include <stdexcept>
#include <string>

namespace adia {

// Bad user input: config files, CLI flags, polynomial syntax, parameter
// validation. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical guard tripped: precision loss, norm drift, solver failure.
// Maps to exit code 2.
class NumericGuardError : public std::runtime_error {
 public:
  explicit NumericGuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adia
