#pragma once

#include <stdexcept>
#include <string>

namespace jetvar {

/// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structural misuse: mismatched truncation shapes, out-of-range indices,
/// malformed element layouts.
struct ShapeError : Error {
  using Error::Error;
};

/// Division by a non-unit, or an elementary function evaluated outside its
/// domain (log of a non-positive constant term, sqrt at zero, ...).
struct SingularityError : Error {
  using Error::Error;
};

/// An element that was required to sit in the holonomic (totally symmetric)
/// subspace does not, beyond tolerance.
struct HolonomyError : Error {
  using Error::Error;
};

/// Semantic domain violations: pairing of elements over different base
/// points, metric evaluated outside its chart domain, and similar.
struct DomainError : Error {
  using Error::Error;
};

/// Singular vertical Hessian or non-positive-definite metric.
struct DegenerateError : Error {
  using Error::Error;
};

/// An iterative solve (Newton, shooting) failed to reach tolerance.
struct ConvergenceError : Error {
  using Error::Error;
};

/// Bad configuration input (CLI config files, expression sources).
struct ConfigError : Error {
  using Error::Error;
};

/// Expression syntax/semantic error carrying a source position.
struct ParseError : ConfigError {
  ParseError(const std::string& msg, int line, int column)
      : ConfigError(msg), line(line), column(column) {}
  int line;
  int column;
};

}  // namespace jetvar
