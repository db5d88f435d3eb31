#pragma once

#include <stdexcept>
#include <string>

namespace phasetrack {

// Exception types thrown by the C++ core. The C API maps each to a stable
// status code (see phasetrack.h).

/// Invalid argument or configuration value.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Input lies outside the domain where a formula is defined.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative numeric routine failed to produce a usable answer.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Configuration text could not be parsed or violates the schema.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace phasetrack
