#include "harness.hpp"

#include <cmath>
#include <cstdio>

#include "cuecomb/experiments.hpp"
#include "cuecomb/oracle.hpp"
#include "cuecomb/parallel.hpp"
#include "cuecomb/sampler.hpp"
#include "cuecomb/stats.hpp"

namespace cuecomb::detail {

ResultTable new_table(std::vector<std::string> columns, std::string_view experiment,
                      const ExperimentConfig& config) {
  ResultTable table(std::move(columns));
  table.set_meta("experiment", std::string(experiment));
  table.set_meta("seed", std::to_string(config.seed));
  table.set_meta("code_version", code_version());
  table.set_meta("config", emit_config(config));
  return table;
}

std::vector<TrialRecord> run_trials(const ModelFactory& factory, std::uint64_t seed,
                                    StreamTag stream_tag, std::uint64_t salt,
                                    std::size_t repetitions, std::size_t trials,
                                    const std::vector<std::size_t>& sample_sizes,
                                    std::size_t jobs) {
  std::vector<TrialRecord> records(repetitions * trials);
  parallel_for(records.size(), jobs, [&](std::size_t index) {
    const std::uint64_t rep = index / trials;
    const std::uint64_t t = index % trials;
    TrialRecord& rec = records[index];
    Rng data_rng = Rng::stream(seed, {tag(stream_tag), salt, rep, t, 0});
    rec.model = factory(data_rng);
    rec.trial = sample_trial(*rec.model, data_rng);
    rec.exact = exact_posterior(*rec.model, rec.trial.observations);
    rec.p_hat.resize(sample_sizes.size());
    for (std::size_t k = 0; k < sample_sizes.size(); ++k) {
      Rng rng = Rng::stream(seed, {tag(stream_tag), salt, rep, t, 1 + k});
      const PosteriorEstimate est = is_posterior(*rec.model, rec.trial.observations, sample_sizes[k], rng);
      rec.p_hat[k] = est.p_c1;
      if (est.n_indicator != est.n_common) rec.audit_ok = false;
    }
  });
  return records;
}

ErrorCell aggregate(const std::vector<TrialRecord>& records, std::size_t first, std::size_t count,
                    std::size_t k) {
  ErrorCell cell;
  for (std::size_t i = first; i < first + count; ++i) {
    const TrialRecord& rec = records[i];
    const Cause exact_decision = decide(rec.exact);
    const Cause is_decision = decide(rec.p_hat[k]);
    ++cell.trials;
    cell.sum_abs_error += std::fabs(rec.p_hat[k] - rec.exact);
    if (is_decision != exact_decision) ++cell.disagreements;
    if (is_decision != rec.trial.true_cause) ++cell.is_cause_errors;
    if (exact_decision != rec.trial.true_cause) ++cell.oracle_cause_errors;
    if (!rec.audit_ok) ++cell.audit_failures;
  }
  return cell;
}

std::vector<std::string> error_columns() {
  return {"error_rate",          "error_rate_lo", "error_rate_hi", "mean_error",
          "is_cause_error_rate", "oracle_cause_error_rate"};
}

void append_error_cells(std::vector<Cell>& row, const ErrorCell& cell) {
  const stats::Interval ci = stats::wilson(cell.disagreements, cell.trials);
  row.emplace_back(cell.error_rate());
  row.emplace_back(ci.lo);
  row.emplace_back(ci.hi);
  row.emplace_back(cell.mean_error());
  row.emplace_back(cell.is_cause_error_rate());
  row.emplace_back(cell.oracle_cause_error_rate());
}

ModelFactory random_sigma_factory(ModelKind kind, std::size_t cues, double prior_c1, double lo,
                                  double hi, double half_range) {
  return [=](Rng& rng) {
    const double sigma_s = rng.uniform(lo, hi);
    std::vector<double> sigmas(cues);
    for (double& s : sigmas) s = rng.uniform(lo, hi);
    ModelParameters params;
    params.prior_c1 = prior_c1;
    params.sigma_s = sigma_s;
    params.sigmas = std::move(sigmas);
    params.half_range = half_range;
    return make_model(kind, params);
  };
}

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

}  // namespace cuecomb::detail
