#ifndef PLB_ERRORS_HPP
#define PLB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plb {

/// Input lies outside the mathematical domain of an operation
/// (point outside a base domain, exponent out of range, ...).
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Malformed specification: unparseable map text, missing or conflicting flags.
struct ValidationError : std::invalid_argument {
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to converge or produced no usable result.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Integrand evaluated to a non-finite value; the message names the node.
struct EvaluationError : NumericError {
  explicit EvaluationError(const std::string& what) : NumericError(what) {}
};

/// Refinement of an integral fails to settle; carries the level trend.
struct IntegrabilityError : NumericError {
  explicit IntegrabilityError(const std::string& what) : NumericError(what) {}
};

/// Grid too coarse to resolve a domain.
struct ResolutionError : NumericError {
  explicit ResolutionError(const std::string& what) : NumericError(what) {}
};

}  // namespace plb

#endif
