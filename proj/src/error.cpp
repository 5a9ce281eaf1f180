#include "wehrl/error.hpp"

#include "wehrl/phase_space.hpp"

namespace wehrl {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::non_normalized_mixture: return "NonNormalizedMixture";
    case ErrorCode::lambda_out_of_range: return "LambdaOutOfRange";
    case ErrorCode::invalid_parameter: return "InvalidParameter";
    case ErrorCode::inadmissible_covariance: return "InadmissibleCovariance";
    case ErrorCode::singular_matrix: return "SingularMatrix";
    case ErrorCode::degenerate_block: return "DegenerateBlock";
    case ErrorCode::non_symmetric: return "NonSymmetric";
    case ErrorCode::not_pure: return "NotPure";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_bipartite: return "NotBipartite";
    case ErrorCode::condition_on_zero_density: return "ConditionOnZeroDensity";
    case ErrorCode::tolerance_not_reached: return "ToleranceNotReached";
    case ErrorCode::support_violation: return "SupportViolation";
    case ErrorCode::unsupported_state: return "UnsupportedState";
  }
  return "Unknown";
}

GaussianEnvelope vacuum_envelope(int dimension) {
  return {Matrix::Identity(dimension, dimension), Vector::Zero(dimension)};
}

}  // namespace wehrl
