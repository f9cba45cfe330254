#include "symtwo/error.hpp"

namespace symtwo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::backend_mismatch: return "BackendMismatch";
    case ErrorKind::not_a_unit: return "NotAUnit";
    case ErrorKind::precision: return "PrecisionError";
    case ErrorKind::zero_series: return "ZeroSeries";
    case ErrorKind::valuation: return "ValuationError";
    case ErrorKind::singular_jacobian: return "SingularJacobian";
    case ErrorKind::not_representable: return "NotRepresentable";
    case ErrorKind::division_by_non_unit: return "DivisionByNonUnit";
    case ErrorKind::syntax: return "SyntaxError";
    case ErrorKind::exponent_not_scalar: return "ExponentNotScalar";
    case ErrorKind::inconclusive: return "Inconclusive";
    case ErrorKind::division_failure: return "DivisionFailure";
    case ErrorKind::unsupported_component: return "UnsupportedComponent";
    case ErrorKind::not_a_leaf_presentation: return "NotALeafPresentation";
    case ErrorKind::degenerate_base_point: return "DegenerateBasePoint";
    case ErrorKind::not_normalized: return "NotNormalized";
    case ErrorKind::precision_exhausted: return "PrecisionExhausted";
    case ErrorKind::nonzero_residual: return "NonzeroResidual";
    case ErrorKind::invalid_input: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

SyntaxError::SyntaxError(std::size_t offset, const std::string& message)
    : Error(ErrorKind::syntax, message + " at offset " + std::to_string(offset)), offset_(offset) {}

}  // namespace symtwo
