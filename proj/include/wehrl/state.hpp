#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wehrl/gaussian.hpp"
#include "wehrl/phase_space.hpp"

namespace wehrl {

struct Fock {
  int n = 0;
};

struct FockWeight {
  int n = 0;
  double q = 0.0;
};

// sum_k q_k |n_k><n_k|
struct FockMixture {
  std::vector<FockWeight> weights;
};

// Thermal oscillator state, parameterized by the dimensionless product beta*omega.
struct Thermal {
  double beta_omega = 1.0;
};

// Zero-mean Gaussian state given by its covariance in PhasePoint ordering.
struct GaussianSpec {
  Matrix v;
  ModePartition partition{1, 1};
};

struct TwoModeSqueezed {
  double lambda = 0.0;
};

// (|N,0> + |0,N>) / sqrt(2 (1 + delta_{0N})); N = 0 is a product of two vacua.
struct Noon {
  int excitation = 0;
};

using StateSpec = std::variant<Fock, FockMixture, Thermal, GaussianSpec, TwoModeSqueezed, Noon>;

std::string kind_name(const StateSpec& spec);

// A StateSpec whose invariants have been checked. Immutable.
class ValidatedState {
 public:
  const StateSpec& spec() const noexcept { return spec_; }
  ModePartition partition() const noexcept { return partition_; }
  // Present for Gaussian and two-mode squeezed states.
  const std::optional<CovarianceModel>& covariance() const noexcept { return covariance_; }

  template <typename T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&spec_);
  }

 private:
  friend ValidatedState validate(StateSpec spec);
  ValidatedState(StateSpec spec, ModePartition partition, std::optional<CovarianceModel> cov)
      : spec_(std::move(spec)), partition_(partition), covariance_(std::move(cov)) {}

  StateSpec spec_;
  ModePartition partition_;
  std::optional<CovarianceModel> covariance_;
};

inline constexpr double mixture_normalization_tolerance = 1e-12;

// Throws Error with NonNormalizedMixture, LambdaOutOfRange, InadmissibleCovariance
// or InvalidParameter.
ValidatedState validate(StateSpec spec);

// Convenience constructors that validate immediately.
ValidatedState fock_state(int n);
ValidatedState fock_mixture_state(std::vector<FockWeight> weights);
ValidatedState mixture01_state(double q);
ValidatedState thermal_state(double beta_omega);
ValidatedState gaussian_state(const Matrix& v, ModePartition partition);
ValidatedState tmss_state(double lambda);
ValidatedState noon_state(int excitation);

}  // namespace wehrl
