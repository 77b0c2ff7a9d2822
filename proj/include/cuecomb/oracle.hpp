#pragma once

#include <cstddef>
#include <span>

#include "cuecomb/model.hpp"

namespace cuecomb {

/// Log marginal likelihoods of the observations under each cause.
struct LogMarginals {
  double common = 0.0;    ///< log P(x | C = 1)
  double separate = 0.0;  ///< log P(x | C = 2)
};

/// P(C = 1 | x) from the two log marginals and the model prior.
double posterior_from_marginals(const CueModel& model, const LogMarginals& marginals);

/// Closed-form log marginals.
///
/// Two- and multi-cue: under C = 1 the observations are jointly Gaussian with
/// covariance sigma_s^2 * 11' + diag(sigma_i^2), handled through the rank-one
/// determinant and inverse identities in O(n). Under C = 2 they are independent
/// Normal(0, sigma_s^2 + sigma_i^2).
///
/// Same-different: the C = 1 marginal integrates the Gaussian product over the
/// uniform location, the C = 2 marginal factorises into per-object
/// box-convolved Gaussians. Normal CDF differences are taken in log space.
LogMarginals exact_log_marginals(const CueModel& model, std::span<const double> observations);

/// Exact P(C = 1 | observations). Throws ShapeMismatch on a length mismatch.
double exact_posterior(const CueModel& model, std::span<const double> observations);

/// Grid for the quadrature oracle. The integration range covers the prior
/// mean and every observation, padded by grid_half_width standard deviations
/// of the widest marginal.
struct QuadratureSpec {
  double grid_half_width = 8.0;
  std::size_t points_per_dim = 1001;

  void validate() const;
};

/// Log marginals by direct numerical integration over the latent stimulus
/// (and location, for same-different). Trapezoid rule; integrals over the
/// bounded location range add one Richardson step to cancel the endpoint
/// error. Shares no algebra with exact_log_marginals.
///
/// Same-different models with more than three objects are refused
/// (CostGuard).
LogMarginals quadrature_log_marginals(const CueModel& model,
                                      std::span<const double> observations,
                                      const QuadratureSpec& spec = {});

double quadrature_posterior(const CueModel& model, std::span<const double> observations,
                            const QuadratureSpec& spec = {});

/// Common iff p_c1 > threshold; a tie goes to Separate.
Cause decide(double p_c1, double threshold = 0.5);

}  // namespace cuecomb
