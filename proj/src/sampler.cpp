#include "cuecomb/sampler.hpp"

#include <string>

#include "cuecomb/oracle.hpp"
#include "cuecomb/parallel.hpp"

namespace cuecomb {

namespace {

template <typename LogWeight>
PosteriorEstimate estimate(const CueModel& model, std::span<const double> observations,
                           std::size_t n_samples, Rng& rng, LogWeight&& log_weight) {
  if (n_samples == 0) throw InvalidParameter("is_posterior: n_samples must be >= 1");
  if (observations.size() != model.cue_count())
    throw ShapeMismatch("is_posterior: expected " + std::to_string(model.cue_count()) +
                        " observations, got " + std::to_string(observations.size()));

  const bool same_different = model.kind() == ModelKind::SameDifferent;
  const double L = model.half_range();
  std::vector<double> stimuli(model.cue_count());
  std::vector<double> log_w(n_samples);
  std::vector<unsigned char> indicator(n_samples);

  PosteriorEstimate est;
  est.n_samples = n_samples;
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_samples; ++i) {
    const DrawInfo info = draw_prior_stimuli(model, rng, stimuli);
    bool on = info.from_common_cause;
    if (on) ++est.n_common;
    if (on && same_different) on = -L <= info.mu && info.mu <= L;
    indicator[i] = on ? 1 : 0;
    if (on) ++est.n_indicator;
    log_w[i] = log_weight(std::span<const double>(stimuli), observations);
    if (log_w[i] > shift) shift = log_w[i];
  }
  if (!(shift > -std::numeric_limits<double>::infinity()))
    throw EstimatorDegenerate("is_posterior: every likelihood weight underflowed");

  for (std::size_t i = 0; i < n_samples; ++i) {
    const double w = std::exp(log_w[i] - shift);
    est.sum_total_weight += w;
    if (indicator[i]) est.sum_common_weight += w;
  }
  est.log_shift = shift;
  est.p_c1 = est.sum_common_weight / est.sum_total_weight;
  est.decision = decide(est.p_c1);
  return est;
}

}  // namespace

PosteriorEstimate is_posterior(const CueModel& model, std::span<const double> observations,
                               std::size_t n_samples, Rng& rng) {
  return estimate(model, observations, n_samples, rng,
                  [&model](std::span<const double> s, std::span<const double> x) {
                    return log_likelihood_unchecked(model, s, x);
                  });
}

PosteriorEstimate is_posterior_with(const CueModel& model, std::span<const double> observations,
                                    std::size_t n_samples, Rng& rng,
                                    const LogWeightFn& log_weight) {
  return estimate(model, observations, n_samples, rng, log_weight);
}

std::vector<PosteriorEstimate> is_posterior_batch(
    const CueModel& model, std::span<const std::vector<double>> observation_set,
    std::size_t n_samples, std::uint64_t seed, const BatchOptions& options) {
  if (observation_set.empty()) throw InvalidParameter("is_posterior_batch: empty observation set");
  if (!options.trial_ids.empty() && options.trial_ids.size() != observation_set.size())
    throw ShapeMismatch("is_posterior_batch: trial_ids must match the observation set");

  std::vector<PosteriorEstimate> results(observation_set.size());
  parallel_for(
      observation_set.size(), options.jobs,
      [&](std::size_t i) {
        const std::uint64_t id = options.trial_ids.empty() ? i : options.trial_ids[i];
        Rng rng = Rng::stream(seed, {id});
        results[i] = is_posterior(model, observation_set[i], n_samples, rng);
      },
      [](std::size_t index, std::exception_ptr error) {
        try {
          std::rethrow_exception(error);
        } catch (const std::exception& e) {
          throw BatchError(index, e.what());
        }
      });
  return results;
}

}  // namespace cuecomb
