#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "cuecomb/errors.hpp"
#include "cuecomb/model.hpp"
#include "cuecomb/rng.hpp"

namespace cuecomb {

/// Self-normalised importance-sampling estimate of P(C = 1 | x).
///
/// Weights are exp(log_weight - log_shift) where log_shift is the largest
/// log-weight of the draw set, so sum_total_weight >= 1 whenever it is finite.
struct PosteriorEstimate {
  double p_c1 = 0.0;
  std::size_t n_samples = 0;
  Cause decision = Cause::Separate;
  double sum_common_weight = 0.0;
  double sum_total_weight = 0.0;
  double log_shift = 0.0;
  std::size_t n_common = 0;     ///< draws from the common-cause branch
  std::size_t n_indicator = 0;  ///< draws whose indicator weight was 1
};

/// Self-normalised weighted expectation sum(v_i w_i) / sum(w_i) over
/// `n_samples` draws of `source(rng)`. `log_weight` returns log w_i. Both sums
/// share the same draws and a single max shift, and are reduced left to right.
///
/// Throws EstimatorDegenerate if every log-weight is -infinity.
template <typename Source, typename LogWeight, typename Value>
double weighted_expectation(Source&& source, LogWeight&& log_weight, Value&& value,
                            std::size_t n_samples, Rng& rng) {
  if (n_samples == 0) throw InvalidParameter("weighted_expectation: n_samples must be >= 1");
  std::vector<double> log_w(n_samples);
  std::vector<double> values(n_samples);
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_samples; ++i) {
    const auto draw = source(rng);
    log_w[i] = static_cast<double>(log_weight(draw));
    values[i] = static_cast<double>(value(draw));
    if (log_w[i] > shift) shift = log_w[i];
  }
  if (!(shift > -std::numeric_limits<double>::infinity()))
    throw EstimatorDegenerate("weighted_expectation: every weight underflowed");
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double w = std::exp(log_w[i] - shift);
    numerator += values[i] * w;
    denominator += w;
  }
  return numerator / denominator;
}

/// Log-weight hook for is_posterior_with: receives the drawn stimuli and the
/// observations, returns a log-weight.
using LogWeightFn =
    std::function<double(std::span<const double> stimuli, std::span<const double> observations)>;

/// Importance-sampling posterior with the prior as proposal.
///
/// Draws N stimulus vectors ancestrally through the cause (and location),
/// weights each by the likelihood of the observations, and averages the
/// common-cause indicator. The indicator comes from the provenance of the
/// draw; for same-different models it also requires -L <= mu <= L, which
/// holds by construction. If no draw is common the estimate is 0.
PosteriorEstimate is_posterior(const CueModel& model, std::span<const double> observations,
                               std::size_t n_samples, Rng& rng);

/// is_posterior with a caller-supplied log-weight in place of the likelihood.
PosteriorEstimate is_posterior_with(const CueModel& model, std::span<const double> observations,
                                    std::size_t n_samples, Rng& rng,
                                    const LogWeightFn& log_weight);

struct BatchOptions {
  std::size_t jobs = 1;
  /// Stream key per observation vector; trial index when empty.
  std::span<const std::uint64_t> trial_ids = {};
};

/// Runs is_posterior on each observation vector with the stream
/// Rng::stream(seed, {trial_id}). Results are independent of `jobs`.
/// A failing trial is rethrown as BatchError carrying its index.
std::vector<PosteriorEstimate> is_posterior_batch(
    const CueModel& model, std::span<const std::vector<double>> observation_set,
    std::size_t n_samples, std::uint64_t seed, const BatchOptions& options = {});

}  // namespace cuecomb
