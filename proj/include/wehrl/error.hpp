#pragma once

#include <stdexcept>
#include <string>

namespace wehrl {

enum class ErrorCode {
  non_normalized_mixture,
  lambda_out_of_range,
  invalid_parameter,
  inadmissible_covariance,
  singular_matrix,
  degenerate_block,
  non_symmetric,
  not_pure,
  dimension_mismatch,
  not_bipartite,
  condition_on_zero_density,
  tolerance_not_reached,
  support_violation,
  unsupported_state,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a covariance matrix has a symplectic eigenvalue below 1/2.
class InadmissibleCovariance : public Error {
 public:
  InadmissibleCovariance(double eigenvalue, const std::string& message)
      : Error(ErrorCode::inadmissible_covariance, message), eigenvalue_(eigenvalue) {}

  double violating_eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

}  // namespace wehrl
