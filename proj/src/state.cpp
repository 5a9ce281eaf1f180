#include "wehrl/state.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "wehrl/error.hpp"

namespace wehrl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string kind_name(const StateSpec& spec) {
  return std::visit(overloaded{
                        [](const Fock&) { return std::string("fock"); },
                        [](const FockMixture&) { return std::string("fock_mixture"); },
                        [](const Thermal&) { return std::string("thermal"); },
                        [](const GaussianSpec&) { return std::string("gaussian"); },
                        [](const TwoModeSqueezed&) { return std::string("tmss"); },
                        [](const Noon&) { return std::string("noon"); },
                    },
                    spec);
}

ValidatedState validate(StateSpec spec) {
  ModePartition partition{1, 0};
  std::optional<CovarianceModel> cov;

  std::visit(overloaded{
                 [](const Fock& s) {
                   if (s.n < 0) {
                     throw Error(ErrorCode::invalid_parameter, "Fock index must be nonnegative");
                   }
                 },
                 [](const FockMixture& s) {
                   if (s.weights.empty()) {
                     throw Error(ErrorCode::non_normalized_mixture, "mixture has no components");
                   }
                   double total = 0.0;
                   std::set<int> seen;
                   for (const auto& w : s.weights) {
                     if (w.n < 0) {
                       throw Error(ErrorCode::invalid_parameter, "Fock index must be nonnegative");
                     }
                     if (!(w.q >= 0.0)) {
                       throw Error(ErrorCode::non_normalized_mixture, "mixture weights must be nonnegative");
                     }
                     if (!seen.insert(w.n).second) {
                       throw Error(ErrorCode::invalid_parameter, "mixture indices must be distinct");
                     }
                     total += w.q;
                   }
                   if (std::abs(total - 1.0) > mixture_normalization_tolerance) {
                     std::ostringstream msg;
                     msg << "weights sum to " << total;
                     throw Error(ErrorCode::non_normalized_mixture, msg.str());
                   }
                 },
                 [](const Thermal& s) {
                   if (!(s.beta_omega > 0.0) || !std::isfinite(s.beta_omega)) {
                     throw Error(ErrorCode::invalid_parameter, "beta*omega must be positive and finite");
                   }
                 },
                 [&](const GaussianSpec& s) {
                   if (s.partition.n_a < 1 || s.partition.n_b < 0) {
                     throw Error(ErrorCode::invalid_parameter, "partition needs n_a >= 1 and n_b >= 0");
                   }
                   partition = s.partition;
                   cov = CovarianceModel::from_v(s.v, s.partition);
                 },
                 [&](const TwoModeSqueezed& s) {
                   if (!(s.lambda >= 0.0 && s.lambda < 1.0)) {
                     throw Error(ErrorCode::lambda_out_of_range, "two-mode squeezing needs 0 <= lambda < 1");
                   }
                   partition = {1, 1};
                   cov = CovarianceModel::from_v(tmss_covariance(s.lambda), partition);
                 },
                 [&](const Noon& s) {
                   if (s.excitation < 0) {
                     throw Error(ErrorCode::invalid_parameter, "N00N excitation must be nonnegative");
                   }
                   partition = {1, 1};
                 },
             },
             spec);

  return ValidatedState(std::move(spec), partition, std::move(cov));
}

ValidatedState fock_state(int n) { return validate(Fock{n}); }

ValidatedState fock_mixture_state(std::vector<FockWeight> weights) {
  return validate(FockMixture{std::move(weights)});
}

ValidatedState mixture01_state(double q) {
  // Endpoints keep both components so that the support of the spec is stable
  // across a sweep.
  return validate(FockMixture{{{0, q}, {1, 1.0 - q}}});
}

ValidatedState thermal_state(double beta_omega) { return validate(Thermal{beta_omega}); }

ValidatedState gaussian_state(const Matrix& v, ModePartition partition) {
  return validate(GaussianSpec{v, partition});
}

ValidatedState tmss_state(double lambda) { return validate(TwoModeSqueezed{lambda}); }

ValidatedState noon_state(int excitation) { return validate(Noon{excitation}); }

}  // namespace wehrl
