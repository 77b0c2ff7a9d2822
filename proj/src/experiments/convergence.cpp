#include <cmath>
#include <string>

#include "cuecomb/experiments.hpp"
#include "harness.hpp"

namespace cuecomb {

using detail::append_error_cells;
using detail::error_columns;
using detail::ErrorCell;
using detail::fixed;
using detail::new_table;
using detail::StreamTag;

namespace {

std::vector<std::string> with_error_columns(std::vector<std::string> head) {
  for (auto& c : error_columns()) head.push_back(std::move(c));
  return head;
}

// Smallest sample size whose pooled error rate meets the target, 0 if none.
std::size_t first_size_meeting(const std::vector<std::size_t>& sizes,
                               const std::vector<ErrorCell>& cells, double target) {
  for (std::size_t k = 0; k < sizes.size(); ++k)
    if (cells[k].error_rate() <= target) return sizes[k];
  return 0;
}

// Shared body of the multi-cue and same-different studies.
Report generalization(const ExperimentConfig& config, const RunOptions& options, ModelKind kind,
                      StreamTag stream_tag, double sigma_lo, double sigma_hi,
                      std::string_view experiment) {
  auto columns = with_error_columns({"n_cues", "n_samples", "n_trials"});
  columns.push_back("audit_failures");
  ResultTable table = new_table(columns, experiment, config);

  std::string summary;
  for (std::size_t c = 0; c < config.cue_counts.size(); ++c) {
    const std::size_t cues = config.cue_counts[c];
    const auto factory = detail::random_sigma_factory(kind, cues, config.prior_c1, sigma_lo,
                                                      sigma_hi, config.half_range);
    const auto records = detail::run_trials(factory, config.seed, stream_tag, c, config.repetitions,
                                            config.n_trials, config.sample_sizes, options.jobs);
    std::vector<ErrorCell> cells;
    for (std::size_t k = 0; k < config.sample_sizes.size(); ++k) {
      cells.push_back(detail::aggregate(records, 0, records.size(), k));
      std::vector<Cell> row{static_cast<std::int64_t>(cues),
                            static_cast<std::int64_t>(config.sample_sizes[k]),
                            static_cast<std::int64_t>(cells.back().trials)};
      append_error_cells(row, cells.back());
      row.emplace_back(static_cast<std::int64_t>(cells.back().audit_failures));
      table.add_row(std::move(row));
    }
    const std::size_t needed =
        first_size_meeting(config.sample_sizes, cells, config.target_error_rate);
    table.set_meta("min_samples_for_target_n" + std::to_string(cues), std::to_string(needed));
    summary += (summary.empty() ? "" : ", ") + std::string("n=") + std::to_string(cues) +
               ": error rate " + fixed(cells.back().error_rate()) + " at N=" +
               std::to_string(config.sample_sizes.back());
  }
  return Report{{{"summary", std::move(table)}}, std::move(summary)};
}

}  // namespace

Report exp2_convergence(const ExperimentConfig& config, const RunOptions& options) {
  const auto& sizes = config.sample_sizes;
  const auto factory = detail::random_sigma_factory(ModelKind::TwoCue, 2, config.prior_c1,
                                                    config.sigma_min, config.sigma_max, 0.0);
  const auto records = detail::run_trials(factory, config.seed, StreamTag::Convergence, 0,
                                          config.repetitions, config.n_trials, sizes, options.jobs);

  ResultTable per_rep = new_table(with_error_columns({"repetition", "n_samples", "n_trials"}),
                                  "exp2_convergence", config);
  auto summary_columns = with_error_columns({"n_samples", "n_trials"});
  summary_columns.insert(summary_columns.begin() + 2, "mean_error_across_repetitions");
  summary_columns.push_back("cause_error_gap");
  ResultTable summary = new_table(summary_columns, "exp2_convergence", config);

  std::vector<std::string> trial_columns{"repetition", "trial",   "sigma_s", "sigma_1",
                                         "sigma_2",    "x1",      "x2",      "true_cause",
                                         "oracle_p_c1"};
  for (std::size_t n : sizes) trial_columns.push_back("p_hat_" + std::to_string(n));
  ResultTable trials = new_table(trial_columns, "exp2_convergence", config);

  for (std::size_t k = 0; k < sizes.size(); ++k) {
    double rep_mean_sum = 0.0;
    for (std::size_t r = 0; r < config.repetitions; ++r) {
      const ErrorCell cell = detail::aggregate(records, r * config.n_trials, config.n_trials, k);
      rep_mean_sum += cell.mean_error();
      std::vector<Cell> row{static_cast<std::int64_t>(r), static_cast<std::int64_t>(sizes[k]),
                            static_cast<std::int64_t>(cell.trials)};
      append_error_cells(row, cell);
      per_rep.add_row(std::move(row));
    }
    const ErrorCell pooled = detail::aggregate(records, 0, records.size(), k);
    std::vector<Cell> row{static_cast<std::int64_t>(sizes[k]),
                          static_cast<std::int64_t>(pooled.trials),
                          rep_mean_sum / static_cast<double>(config.repetitions)};
    append_error_cells(row, pooled);
    row.emplace_back(std::fabs(pooled.is_cause_error_rate() - pooled.oracle_cause_error_rate()));
    summary.add_row(std::move(row));
  }

  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const auto sigmas = rec.model->sigmas();
    std::vector<Cell> row{static_cast<std::int64_t>(i / config.n_trials),
                          static_cast<std::int64_t>(i % config.n_trials),
                          rec.model->sigma_s(),
                          sigmas[0],
                          sigmas[1],
                          rec.trial.observations[0],
                          rec.trial.observations[1],
                          static_cast<std::int64_t>(rec.trial.true_cause),
                          rec.exact};
    for (double p : rec.p_hat) row.emplace_back(p);
    trials.add_row(std::move(row));
  }

  const std::size_t last = summary.row_count() - 1;
  std::string line = "mean error " + fixed(summary.value(last, "mean_error")) + ", error rate " +
                     fixed(summary.value(last, "error_rate")) + " at N=" +
                     std::to_string(sizes.back());
  return Report{{{"summary", std::move(summary)},
                 {"per_repetition", std::move(per_rep)},
                 {"trials", std::move(trials)}},
                std::move(line)};
}

Report exp3_sweep(const ExperimentConfig& config, const RunOptions& options) {
  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double v = config.sweep_min + static_cast<double>(k) * config.sweep_step;
    if (v > config.sweep_max + 1e-9 * config.sweep_step) break;
    grid.push_back(v);
  }

  ResultTable table = new_table(
      with_error_columns({"sigma_s", "sigma_1", "sigma_2", "n_samples", "n_trials"}), "exp3_sweep",
      config);
  const std::vector<std::size_t> sizes{config.sweep_samples};
  std::uint64_t cell_index = 0;
  double worst = 0.0;
  for (double sigma_s : config.sweep_sigma_s) {
    for (double sigma_1 : grid) {
      for (double sigma_2 : grid) {
        const auto factory = [&](Rng&) {
          return CueModel::two_cue(config.prior_c1, sigma_s, sigma_1, sigma_2);
        };
        const auto records = detail::run_trials(factory, config.seed, StreamTag::Sweep, cell_index++,
                                                1, config.sweep_trials, sizes, options.jobs);
        const ErrorCell cell = detail::aggregate(records, 0, records.size(), 0);
        worst = std::max(worst, cell.error_rate());
        std::vector<Cell> row{sigma_s, sigma_1, sigma_2,
                              static_cast<std::int64_t>(config.sweep_samples),
                              static_cast<std::int64_t>(cell.trials)};
        append_error_cells(row, cell);
        table.add_row(std::move(row));
      }
    }
  }
  std::string line = std::to_string(table.row_count()) + " cells, worst error rate " + fixed(worst);
  return Report{{{"grid", std::move(table)}}, std::move(line)};
}

Report exp_multi(const ExperimentConfig& config, const RunOptions& options) {
  return generalization(config, options, ModelKind::MultiCue, StreamTag::MultiCue, config.sigma_min,
                        config.sigma_max, "exp_multi");
}

Report exp_samediff(const ExperimentConfig& config, const RunOptions& options) {
  return generalization(config, options, ModelKind::SameDifferent, StreamTag::SameDifferent,
                        config.samediff_sigma_min, config.samediff_sigma_max, "exp_samediff");
}

}  // namespace cuecomb
