#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bispectral {

enum class ErrorKind {
  DivisionByZero,
  VariableMismatch,
  PoleAtPoint,
  NotFormallySymmetric,
  NotInBaseAlgebra,
  SyntaxError,
  UnboundParameter,
  ReservedSymbolMisuse,
  InvalidContext,
  NonPolynomialLeadingCoefficient,
  FactorizationFails,
  QMismatch,
  InexactDivision,
  EndpointAtPole,
  NotSigmaInvariant,
  NotInKernel,
  DependentKernel,
  NotLagrangian,
  NotSigmaStable,
  NonRationalValue,
  InvalidArgument,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the parser; `position` is a 0-based byte offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message);

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace bispectral
