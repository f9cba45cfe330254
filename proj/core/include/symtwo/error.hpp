#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symtwo {

/// Every failure the library can raise. The CLI maps these onto exit codes,
/// so adding a kind means deciding which code it belongs to in tools/cli.cpp.
enum class ErrorKind {
  backend_mismatch,
  not_a_unit,
  precision,           // a coefficient beyond the guaranteed order was requested
  zero_series,         // every known coefficient vanishes
  valuation,           // inner series of a composition has a constant term
  singular_jacobian,
  not_representable,   // exact backend cannot hold the value (e.g. exp(1))
  division_by_non_unit,
  syntax,
  exponent_not_scalar,
  inconclusive,
  division_failure,
  unsupported_component,
  not_a_leaf_presentation,
  degenerate_base_point,
  not_normalized,
  precision_exhausted,
  nonzero_residual,
  invalid_input,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace symtwo
