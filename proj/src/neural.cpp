#include "cuecomb/neural.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cuecomb/errors.hpp"
#include "cuecomb/oracle.hpp"

namespace cuecomb {

namespace {

void check_observations(const NeuronPool& pool, std::span<const double> x) {
  if (x.size() != pool.model().cue_count())
    throw ShapeMismatch("neural: expected " + std::to_string(pool.model().cue_count()) +
                        " observations, got " + std::to_string(x.size()));
}

Readout make_readout(const NeuronPool& pool, std::span<const double> normalized) {
  Readout r;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    if (pool.common_weight(i))
      r.a1 += normalized[i];
    else
      r.a2 += normalized[i];
  }
  r.decision = r.a1 > r.a2 ? Cause::Common : Cause::Separate;
  return r;
}

}  // namespace

NeuronPool::NeuronPool(CueModel model, std::vector<StimulusSample> preferred, double gain)
    : model_(std::move(model)), preferred_(std::move(preferred)), gain_(gain) {
  if (preferred_.empty()) throw InvalidParameter("a neuron pool needs at least one neuron");
  if (!(gain_ > 0.0) || !std::isfinite(gain_))
    throw InvalidParameter("gain must be a positive finite number");
  const double L = model_.half_range();
  indicator_.reserve(preferred_.size());
  for (const StimulusSample& s : preferred_) {
    if (s.stimuli.size() != model_.cue_count())
      throw ShapeMismatch("preferred stimulus length differs from the model cue count");
    bool on = s.from_common_cause;
    if (on && model_.kind() == ModelKind::SameDifferent)
      on = s.mu.has_value() && -L <= *s.mu && *s.mu <= L;
    indicator_.push_back(on ? 1 : 0);
  }
}

NeuronPool build_pool(const CueModel& model, std::size_t pool_size, double gain, Rng& rng) {
  if (pool_size == 0) throw InvalidParameter("pool_size must be >= 1");
  std::vector<StimulusSample> preferred;
  preferred.reserve(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) preferred.push_back(sample_prior_stimuli(model, rng));
  return NeuronPool(model, std::move(preferred), gain);
}

std::vector<double> expected_rates(const NeuronPool& pool, std::span<const double> observations) {
  check_observations(pool, observations);
  std::vector<double> rates;
  rates.reserve(pool.size());
  for (const StimulusSample& s : pool.preferred())
    rates.push_back(pool.gain() * std::exp(log_likelihood_unchecked(pool.model(), s.stimuli, observations)));
  return rates;
}

std::vector<double> normalized_likelihoods(const NeuronPool& pool,
                                           std::span<const double> observations) {
  check_observations(pool, observations);
  std::vector<double> out;
  out.reserve(pool.size());
  double shift = -std::numeric_limits<double>::infinity();
  for (const StimulusSample& s : pool.preferred()) {
    out.push_back(log_likelihood_unchecked(pool.model(), s.stimuli, observations));
    if (out.back() > shift) shift = out.back();
  }
  double total = 0.0;
  for (double& v : out) {
    v = std::exp(v - shift);
    total += v;
  }
  for (double& v : out) v /= total;
  return out;
}

SpikeResponse emit_spikes(const NeuronPool& pool, std::span<const double> observations, Rng& rng) {
  const std::vector<double> rates = expected_rates(pool, observations);
  SpikeResponse response;
  response.counts.reserve(rates.size());
  for (double rate : rates) {
    response.counts.push_back(rng.poisson(rate));
    response.total += response.counts.back();
  }
  if (response.total == 0) throw SilentPool("the neuron pool emitted no spikes");
  response.normalized.reserve(rates.size());
  const double total = static_cast<double>(response.total);
  for (std::uint64_t c : response.counts) response.normalized.push_back(static_cast<double>(c) / total);
  return response;
}

Readout readout(const NeuronPool& pool, const SpikeResponse& response) {
  if (response.normalized.size() != pool.size())
    throw ShapeMismatch("readout: response does not belong to this pool");
  return make_readout(pool, response.normalized);
}

Readout readout_expected(const NeuronPool& pool, std::span<const double> observations) {
  return make_readout(pool, normalized_likelihoods(pool, observations));
}

PosteriorEstimate circuit_infer(const NeuronPool& pool, std::span<const double> observations,
                                Rng& rng) {
  const SpikeResponse response = emit_spikes(pool, observations, rng);
  const Readout r = readout(pool, response);
  PosteriorEstimate est;
  est.p_c1 = r.a1;
  est.n_samples = pool.size();
  est.decision = r.decision;
  est.sum_total_weight = static_cast<double>(response.total);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool.preferred()[i].from_common_cause) ++est.n_common;
    if (pool.common_weight(i)) {
      ++est.n_indicator;
      est.sum_common_weight += static_cast<double>(response.counts[i]);
    }
  }
  return est;
}

}  // namespace cuecomb
