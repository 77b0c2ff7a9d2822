#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cuecomb/model.hpp"
#include "cuecomb/rng.hpp"
#include "cuecomb/sampler.hpp"

namespace cuecomb {

/// Population of Poisson neurons whose preferred stimuli are prior draws.
/// Neuron i fires with mean gain * P(x | preferred_i) per trial window.
class NeuronPool {
 public:
  NeuronPool(CueModel model, std::vector<StimulusSample> preferred, double gain);

  const CueModel& model() const noexcept { return model_; }
  std::span<const StimulusSample> preferred() const noexcept { return preferred_; }
  double gain() const noexcept { return gain_; }
  std::size_t size() const noexcept { return preferred_.size(); }

  /// Synaptic weight onto the common-cause unit: the indicator of neuron i.
  bool common_weight(std::size_t i) const noexcept { return indicator_[i] != 0; }

 private:
  CueModel model_;
  std::vector<StimulusSample> preferred_;
  std::vector<unsigned char> indicator_;
  double gain_;
};

struct SpikeResponse {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::vector<double> normalized;  ///< counts[i] / total
};

struct Readout {
  double a1 = 0.0;  ///< common-cause unit
  double a2 = 0.0;  ///< separate-cause unit
  Cause decision = Cause::Separate;
};

/// Throws InvalidParameter for pool_size == 0 or a non-positive gain.
NeuronPool build_pool(const CueModel& model, std::size_t pool_size, double gain, Rng& rng);

/// Expected counts gain * P(x | preferred_i).
std::vector<double> expected_rates(const NeuronPool& pool, std::span<const double> observations);

/// Normalised likelihoods P(x | preferred_i) / sum_j P(x | preferred_j),
/// the expectation of the normalised rates.
std::vector<double> normalized_likelihoods(const NeuronPool& pool,
                                           std::span<const double> observations);

/// Independent Poisson counts followed by divisive normalisation.
/// Throws SilentPool when no neuron fires.
SpikeResponse emit_spikes(const NeuronPool& pool, std::span<const double> observations, Rng& rng);

/// Indicator-weighted sums of the normalised rates and the max decision
/// (tie goes to Separate).
Readout readout(const NeuronPool& pool, const SpikeResponse& response);

/// Readout with the normalised rates replaced by their expectations.
Readout readout_expected(const NeuronPool& pool, std::span<const double> observations);

/// emit_spikes then readout; p_c1 = a1, sums are spike counts.
PosteriorEstimate circuit_infer(const NeuronPool& pool, std::span<const double> observations,
                                Rng& rng);

}  // namespace cuecomb
