#include <algorithm>
#include <cmath>
#include <map>

#include "cuecomb/experiments.hpp"
#include "cuecomb/oracle.hpp"
#include "cuecomb/stats.hpp"
#include "harness.hpp"

namespace cuecomb {

Report exp4_disparity(const ExperimentConfig& config, const RunOptions& options) {
  const CueModel model = CueModel::two_cue(config.prior_c1, config.disparity_sigma_s,
                                           config.disparity_sigma_1, config.disparity_sigma_2);
  const auto& sizes = config.disparity_sample_sizes;
  const auto records = detail::run_trials([&](Rng&) { return model; }, config.seed,
                                          detail::StreamTag::Disparity, 0, 1,
                                          config.disparity_trials, sizes, options.jobs);

  // Bin k covers [(k - 1/2) w, (k + 1/2) w), so bin 0 is centred on zero.
  struct Bin {
    std::size_t count = 0;
    std::size_t oracle_common = 0;
    std::vector<std::size_t> is_common;
  };
  std::map<std::int64_t, Bin> bins;
  const double w = config.disparity_bin_width;
  for (const auto& rec : records) {
    const double disparity = rec.trial.stimuli[1] - rec.trial.stimuli[0];
    const auto k = static_cast<std::int64_t>(std::floor(disparity / w + 0.5));
    Bin& bin = bins[k];
    if (bin.is_common.empty()) bin.is_common.assign(sizes.size(), 0);
    ++bin.count;
    if (decide(rec.exact) == Cause::Common) ++bin.oracle_common;
    for (std::size_t j = 0; j < sizes.size(); ++j)
      if (decide(rec.p_hat[j]) == Cause::Common) ++bin.is_common[j];
  }

  std::vector<std::string> columns{"bin_center", "count", "low_count", "oracle_proportion",
                                   "oracle_lo", "oracle_hi"};
  for (std::size_t n : sizes) {
    const std::string s = std::to_string(n);
    columns.push_back("is_proportion_" + s);
    columns.push_back("is_lo_" + s);
    columns.push_back("is_hi_" + s);
  }
  ResultTable table = detail::new_table(columns, "exp4_disparity", config);

  std::vector<double> max_dev(sizes.size(), 0.0);
  for (const auto& [k, bin] : bins) {
    const bool low = bin.count < config.min_bin_count;
    const double n = static_cast<double>(bin.count);
    const double oracle_p = static_cast<double>(bin.oracle_common) / n;
    const auto oracle_ci = stats::wilson(bin.oracle_common, bin.count);
    std::vector<Cell> row{static_cast<double>(k) * w, static_cast<std::int64_t>(bin.count),
                          static_cast<std::int64_t>(low ? 1 : 0), oracle_p, oracle_ci.lo,
                          oracle_ci.hi};
    for (std::size_t j = 0; j < sizes.size(); ++j) {
      const double p = static_cast<double>(bin.is_common[j]) / n;
      const auto ci = stats::wilson(bin.is_common[j], bin.count);
      row.emplace_back(p);
      row.emplace_back(ci.lo);
      row.emplace_back(ci.hi);
      if (!low) max_dev[j] = std::max(max_dev[j], std::fabs(p - oracle_p));
    }
    table.add_row(std::move(row));
  }

  ResultTable deviation =
      detail::new_table({"n_samples", "max_abs_deviation"}, "exp4_disparity", config);
  deviation.set_meta("min_bin_count", std::to_string(config.min_bin_count));
  std::string line;
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    deviation.add_row({static_cast<std::int64_t>(sizes[j]), max_dev[j]});
    line += (j ? ", " : "max bin deviation ") + std::string("N=") + std::to_string(sizes[j]) + ": " +
            detail::fixed(max_dev[j]);
  }
  return Report{{{"bins", std::move(table)}, {"deviation", std::move(deviation)}}, std::move(line)};
}

}  // namespace cuecomb
