#include "bispectral/error.hpp"

namespace bispectral {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::NotFormallySymmetric: return "NotFormallySymmetric";
    case ErrorKind::NotInBaseAlgebra: return "NotInBaseAlgebra";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnboundParameter: return "UnboundParameter";
    case ErrorKind::ReservedSymbolMisuse: return "ReservedSymbolMisuse";
    case ErrorKind::InvalidContext: return "InvalidContext";
    case ErrorKind::NonPolynomialLeadingCoefficient: return "NonPolynomialLeadingCoefficient";
    case ErrorKind::FactorizationFails: return "FactorizationFails";
    case ErrorKind::QMismatch: return "QMismatch";
    case ErrorKind::InexactDivision: return "InexactDivision";
    case ErrorKind::EndpointAtPole: return "EndpointAtPole";
    case ErrorKind::NotSigmaInvariant: return "NotSigmaInvariant";
    case ErrorKind::NotInKernel: return "NotInKernel";
    case ErrorKind::DependentKernel: return "DependentKernel";
    case ErrorKind::NotLagrangian: return "NotLagrangian";
    case ErrorKind::NotSigmaStable: return "NotSigmaStable";
    case ErrorKind::NonRationalValue: return "NonRationalValue";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : Error(ErrorKind::SyntaxError, "at position " + std::to_string(position) + ": " + message),
      position_(position) {}

}  // namespace bispectral
