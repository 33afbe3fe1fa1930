#pragma once

#include <stdexcept>
#include <string>

namespace beolmem {

/// Non-finite or out-of-domain numeric input.
class InputDomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Request for a topology/port combination the models do not cover.
class CapabilityError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Explicit integration took a step larger than the stability guard allows.
class StepSizeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A design or search has no point satisfying its constraints.
class InfeasibleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration value, schema or unit.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Missing input to a report (unknown figure id, absent baseline run).
class ReportError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace beolmem
