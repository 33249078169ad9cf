#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jacobiflow {

/// Base for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text; `offset` is the 0-based character position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation hit a singular primitive (division by zero, log of a
/// non-positive number, non-finite result).
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::string subexpr)
      : Error(what + " in '" + subexpr + "'"), subexpr_(std::move(subexpr)) {}
  const std::string& subexpression() const noexcept { return subexpr_; }

 private:
  std::string subexpr_;
};

/// Operand shapes disagree (arity, truncation degree, index range).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An input failed a declared precondition check (family shape, grid
/// residual, configuration-space component, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Trajectory left its domain box or the step size collapsed.
class FlowError : public Error {
 public:
  using Error::Error;
};

/// Root bracketing, quadrature or extrapolation did not converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace jacobiflow
