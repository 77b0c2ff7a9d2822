#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cuecomb/errors.hpp"
#include "cuecomb/model.hpp"

namespace cuecomb {

/// Parse or validation failure. line() is 0 for validation errors, field()
/// is empty for pure syntax errors.
class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, std::string field, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

/// Every tunable of the experiment harness. Defaults are the published
/// settings; see presets/ for the per-experiment files.
struct ExperimentConfig {
  // [run]
  std::uint64_t seed = 0;
  std::size_t n_trials = 1000;
  std::size_t repetitions = 10;
  std::vector<std::size_t> sample_sizes{10, 50, 100, 300, 500, 1000, 3000, 10000};
  double target_error_rate = 0.05;
  std::string output_dir = ".";

  // [model] fixed model for infer, exact, exp1 and theorem1
  ModelKind model_kind = ModelKind::TwoCue;
  double prior_c1 = 0.5;
  double sigma_s = 4.0;
  double sigma_1 = 6.0;
  double sigma_2 = 6.0;
  std::vector<double> sigmas;  ///< cue sigmas for multi_cue / same_different
  double half_range = 10.0;
  std::vector<std::vector<double>> observations{{0.0, 0.0}};
  std::size_t infer_samples = 100000;
  double sigma_min = 3.0;  ///< per-trial Uniform range for exp2 and multi
  double sigma_max = 7.0;

  // [neural]
  double gain = 10000.0;
  std::size_t pool_size = 1000;
  std::size_t stride = 30;
  std::size_t silent_retries = 10;

  // [sweep]
  std::vector<double> sweep_sigma_s{1, 2, 3, 4, 5, 6, 7, 8};
  double sweep_min = 1.0;
  double sweep_max = 8.0;
  double sweep_step = 1.0;
  std::size_t sweep_samples = 1000;
  std::size_t sweep_trials = 1000;

  // [disparity]
  std::size_t disparity_trials = 200000;
  double disparity_sigma_s = 10.0;
  double disparity_sigma_1 = 3.0;
  double disparity_sigma_2 = 10.0;
  std::vector<std::size_t> disparity_sample_sizes{100, 300, 1000};
  double disparity_bin_width = 1.0;
  std::size_t min_bin_count = 200;

  // [generalization]
  std::vector<std::size_t> cue_counts{3, 10};
  double samediff_sigma_min = 1.0;
  double samediff_sigma_max = 3.0;

  // [theorem1]
  std::vector<double> epsilons{0.05, 0.02, 0.01};

  // [lemma]
  std::string lemma_distribution = "normal";
  double lemma_mu_1 = 2.0;
  double lemma_sd_1 = 1.0;
  double lemma_mu_2 = 4.0;
  double lemma_sd_2 = 1.0;
  std::vector<std::size_t> lemma_sizes{10, 100, 1000};
  std::vector<double> lemma_epsilons{0.5, 0.2, 0.1};
  std::size_t lemma_repetitions = 10000;
  bool lemma_shared_draws = false;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses the flat key/value format:
///
///   # comment            (also allowed after a value)
///   [section]            (optional grouping; must be a known section)
///   key = value
///   list_key = 1, 2, 3
///   point_key = 0, 0; 1.5, -2
///
/// Missing keys keep their defaults. Unknown or repeated keys are errors.
/// Throws ConfigError with the offending line, or naming the invalid field.
ExperimentConfig parse_config(std::string_view text);

/// Applies one "key=value" override on top of an existing config, then
/// revalidates.
void apply_override(ExperimentConfig& config, std::string_view assignment);

/// Throws ConfigError naming the first invalid field.
void validate(const ExperimentConfig& config);

/// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& config);

/// The fixed model described by the [model] section.
CueModel model_from_config(const ExperimentConfig& config);

}  // namespace cuecomb
