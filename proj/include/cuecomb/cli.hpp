#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cuecomb/config.hpp"
#include "cuecomb/experiments.hpp"

namespace cuecomb {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitConfig = 2, kExitRuntime = 3 };

/// Parsed command line.
struct RunConfig {
  std::string subcommand;
  std::string config_path;              ///< empty: preset or defaults
  std::string preset;                   ///< empty: preset named after the subcommand, if any
  std::optional<std::uint64_t> seed;
  std::string output_dir;               ///< empty: config's output_dir
  std::size_t jobs = 1;
  std::vector<std::string> overrides;   ///< "key=value" applied after loading
};

const std::vector<std::string_view>& subcommands();

/// IS estimate of P(C=1 | x) for each configured observation vector,
/// infer_samples draws each.
Report infer_report(const ExperimentConfig& config, const RunOptions& options = {});

/// Exact and quadrature posteriors for each configured observation vector.
Report exact_report(const ExperimentConfig& config, const RunOptions& options = {});

/// Dispatches to the named experiment. Throws InvalidParameter for an
/// unknown name.
Report run_experiment(std::string_view subcommand, const ExperimentConfig& config,
                      const RunOptions& options = {});

/// Builds the config a RunConfig describes (preset or file, overrides, seed).
/// Throws ConfigError.
ExperimentConfig load_config(const RunConfig& run);

/// Runs one subcommand, writes <out>/<subcommand>_<table>.csv for every table
/// and prints the summary line to `out`. Returns an ExitCode.
int run(const RunConfig& run, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cuecomb
