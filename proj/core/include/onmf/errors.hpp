#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace onmf {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid solver configuration or an operation requested for the wrong
/// factorization kind.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Matrix dimensions that do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Input that is well formed but makes the requested quantity undefined
/// (zero column, empty table, single class, ...).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Value outside the admissible domain (negative or non-finite data).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised when an additive-update inner loop exhausts its attempt budget
/// without finding a damping value that keeps the objective from rising.
class DampingFailure : public Error {
 public:
  DampingFailure(char factor, double last_delta, double candidate_objective,
                 double reference_objective);

  char factor() const noexcept { return factor_; }
  double last_delta() const noexcept { return last_delta_; }
  double candidate_objective() const noexcept { return candidate_objective_; }
  double reference_objective() const noexcept { return reference_objective_; }

 private:
  char factor_;
  double last_delta_;
  double candidate_objective_;
  double reference_objective_;
};

}  // namespace onmf
