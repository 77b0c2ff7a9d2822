#pragma once

#include <cstddef>
#include <string>

#include "cuecomb/config.hpp"
#include "cuecomb/table.hpp"

namespace cuecomb {

struct RunOptions {
  std::size_t jobs = 1;
};

/// Version string echoed into every table's metadata.
std::string code_version();

// Error-rate conventions used by every table:
//   error_rate             fraction of trials where the estimator's decision
//                          differs from the exact-posterior decision
//   is_cause_error_rate    estimator decision != generating cause
//   oracle_cause_error_rate exact decision != generating cause (Bayes error)
// Each error_rate carries a Wilson 95% interval (error_rate_lo/_hi).

/// Spiking population on one trial of the fixed two-cue model.
/// Tables: "population" (one row per neuron) and "population_strided".
Report exp1_population(const ExperimentConfig& config, const RunOptions& options = {});

/// Estimator error and decision error against the exact posterior as the
/// sample size grows; sigma_s and both cue sigmas ~ Uniform[sigma_min,
/// sigma_max] per trial. Tables: "summary", "per_repetition", "trials".
Report exp2_convergence(const ExperimentConfig& config, const RunOptions& options = {});

/// Error rate at sweep_samples over the (sigma_1, sigma_2) grid for each
/// sigma_s in sweep_sigma_s. Table: "grid".
Report exp3_sweep(const ExperimentConfig& config, const RunOptions& options = {});

/// Proportion of common-cause reports per stimulus-disparity bin for the
/// exact observer and the estimator at each disparity sample size.
/// Tables: "bins", "deviation".
Report exp4_disparity(const ExperimentConfig& config, const RunOptions& options = {});

/// Multi-cue causal inference for each entry of cue_counts. Table: "summary".
Report exp_multi(const ExperimentConfig& config, const RunOptions& options = {});

/// Same-different judgement for each entry of cue_counts. Table: "summary".
Report exp_samediff(const ExperimentConfig& config, const RunOptions& options = {});

/// |p_hat - exact| distribution against N at fixed observations.
/// Tables: "errors", "coverage".
Report theorem1_check(const ExperimentConfig& config, const RunOptions& options = {});

/// Empirical coverage of the ratio-of-means and reciprocal-mean concentration
/// bounds. Table: "coverage".
Report lemma1_check(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace cuecomb
