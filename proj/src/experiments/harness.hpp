#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cuecomb/config.hpp"
#include "cuecomb/model.hpp"
#include "cuecomb/rng.hpp"
#include "cuecomb/table.hpp"

namespace cuecomb::detail {

// First element of every derived stream path; keeps experiments disjoint.
enum class StreamTag : std::uint64_t {
  Population = 1,
  Convergence = 2,
  Sweep = 3,
  Disparity = 4,
  MultiCue = 5,
  SameDifferent = 6,
  Theorem1 = 7,
  Lemma = 8,
};

constexpr std::uint64_t tag(StreamTag t) { return static_cast<std::uint64_t>(t); }

/// Table with the standard metadata block (experiment, seed, version, config).
ResultTable new_table(std::vector<std::string> columns, std::string_view experiment,
                      const ExperimentConfig& config);

using ModelFactory = std::function<CueModel(Rng&)>;

struct TrialRecord {
  std::optional<CueModel> model;
  Trial trial;
  double exact = 0.0;
  std::vector<double> p_hat;  ///< one per sample size
  bool audit_ok = true;       ///< indicator count equals common-draw count
};

/// Generates repetitions * trials independent trials and runs the exact
/// posterior plus one importance-sampling estimate per sample size on each.
/// Trial (r, t) uses stream path {tag, salt, r, t, 0} for the model and data
/// and {tag, salt, r, t, 1 + k} for sample size k. Results are indexed
/// r * trials + t and do not depend on `jobs`.
std::vector<TrialRecord> run_trials(const ModelFactory& factory, std::uint64_t seed,
                                    StreamTag stream_tag, std::uint64_t salt,
                                    std::size_t repetitions, std::size_t trials,
                                    const std::vector<std::size_t>& sample_sizes,
                                    std::size_t jobs);

struct ErrorCell {
  std::size_t trials = 0;
  double sum_abs_error = 0.0;
  std::size_t disagreements = 0;
  std::size_t is_cause_errors = 0;
  std::size_t oracle_cause_errors = 0;
  std::size_t audit_failures = 0;

  double mean_error() const { return sum_abs_error / static_cast<double>(trials); }
  double error_rate() const { return static_cast<double>(disagreements) / static_cast<double>(trials); }
  double is_cause_error_rate() const {
    return static_cast<double>(is_cause_errors) / static_cast<double>(trials);
  }
  double oracle_cause_error_rate() const {
    return static_cast<double>(oracle_cause_errors) / static_cast<double>(trials);
  }
};

/// Accumulates records [first, first + count) at sample-size index k, in order.
ErrorCell aggregate(const std::vector<TrialRecord>& records, std::size_t first, std::size_t count,
                    std::size_t k);

/// Appends error_rate, error_rate_lo, error_rate_hi, mean_error,
/// is_cause_error_rate, oracle_cause_error_rate to a row.
void append_error_cells(std::vector<Cell>& row, const ErrorCell& cell);
std::vector<std::string> error_columns();

/// Uniform draws for sigma_s then each cue sigma.
ModelFactory random_sigma_factory(ModelKind kind, std::size_t cues, double prior_c1, double lo,
                                  double hi, double half_range);

std::string fixed(double value, int digits = 4);

}  // namespace cuecomb::detail
