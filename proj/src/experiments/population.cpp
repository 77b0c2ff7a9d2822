#include <cmath>
#include <optional>

#include "cuecomb/errors.hpp"
#include "cuecomb/experiments.hpp"
#include "cuecomb/neural.hpp"
#include "cuecomb/oracle.hpp"
#include "harness.hpp"

namespace cuecomb {

Report exp1_population(const ExperimentConfig& config, const RunOptions&) {
  using detail::StreamTag;
  using detail::tag;
  const CueModel model = CueModel::two_cue(config.prior_c1, config.sigma_s, config.sigma_1, config.sigma_2);

  Rng trial_rng = Rng::stream(config.seed, {tag(StreamTag::Population), 0});
  const Trial trial = sample_trial(model, trial_rng);
  Rng pool_rng = Rng::stream(config.seed, {tag(StreamTag::Population), 1});
  const NeuronPool pool = build_pool(model, config.pool_size, config.gain, pool_rng);

  std::optional<SpikeResponse> response;
  std::size_t attempts = 0;
  while (!response) {
    Rng spike_rng = Rng::stream(config.seed, {tag(StreamTag::Population), 2, attempts});
    try {
      response = emit_spikes(pool, trial.observations, spike_rng);
    } catch (const SilentPool&) {
      if (++attempts > config.silent_retries) throw;
    }
  }

  const std::vector<double> expected = expected_rates(pool, trial.observations);
  const std::vector<double> norm_lik = normalized_likelihoods(pool, trial.observations);
  const Readout spiking = readout(pool, *response);
  const Readout ideal = readout_expected(pool, trial.observations);

  ResultTable table = detail::new_table({"neuron", "common", "stimulus_1", "stimulus_2", "rate",
                                         "expected_rate", "normalized_rate", "normalized_likelihood"},
                                        "exp1_population", config);
  double abs_dev = 0.0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& s = pool.preferred()[i].stimuli;
    abs_dev += std::fabs(response->normalized[i] - norm_lik[i]);
    table.add_row({static_cast<std::int64_t>(i + 1),
                   static_cast<std::int64_t>(pool.common_weight(i) ? 1 : 0), s[0], s[1],
                   static_cast<std::int64_t>(response->counts[i]), expected[i],
                   response->normalized[i], norm_lik[i]});
  }
  abs_dev /= static_cast<double>(pool.size());

  table.set_meta("observations", format_real(trial.observations[0]) + ", " +
                                     format_real(trial.observations[1]));
  table.set_meta("true_cause", std::string(to_string(trial.true_cause)));
  table.set_meta("total_spikes", std::to_string(response->total));
  table.set_meta("silent_retries_used", std::to_string(attempts));
  table.set_meta("mean_abs_deviation", format_real(abs_dev));
  table.set_meta("a1", format_real(spiking.a1));
  table.set_meta("a2", format_real(spiking.a2));
  table.set_meta("decision", std::string(to_string(spiking.decision)));
  table.set_meta("expected_a1", format_real(ideal.a1));
  table.set_meta("exact_p_c1", format_real(exact_posterior(model, trial.observations)));

  ResultTable strided = stride_rows(table, config.stride);
  std::string line = "mean |normalized rate - normalized likelihood| " + detail::fixed(abs_dev, 6) +
                     ", a1 " + detail::fixed(spiking.a1);
  return Report{{{"population", std::move(table)}, {"population_strided", std::move(strided)}},
                std::move(line)};
}

}  // namespace cuecomb
