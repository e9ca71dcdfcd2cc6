#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpl {

/// Input data failed a structural precondition (shape, range, mode mix).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value lies outside a formula's domain (e.g. lambda >= 2 in gamma).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Expression text could not be parsed; carries the byte offset of the
/// first offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t offset)
      : std::runtime_error(std::move(message)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Expression evaluation hit a runtime failure (division by zero,
/// sqrt of a negative, irrational sqrt in exact mode).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad harness configuration (fuzz ranges, unknown scenario, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fpl
