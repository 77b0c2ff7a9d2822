#include "cuecomb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "cuecomb/errors.hpp"
#include "cuecomb/oracle.hpp"
#include "cuecomb/presets.hpp"
#include "cuecomb/sampler.hpp"
#include "experiments/harness.hpp"

namespace cuecomb {

namespace {

// Stream tag for single inferences; experiments use 1..8.
constexpr std::uint64_t kInferStream = 9;

std::vector<std::string> point_columns(std::string_view lead, std::size_t width) {
  std::vector<std::string> columns{std::string(lead)};
  for (std::size_t i = 0; i < width; ++i) columns.push_back("x_" + std::to_string(i + 1));
  return columns;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "", "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

const std::vector<std::string_view>& subcommands() {
  static const std::vector<std::string_view> names{"infer", "exact", "exp1",     "exp2",     "exp3",
                                                   "exp4",  "multi", "samediff", "theorem1", "lemma1"};
  return names;
}

Report infer_report(const ExperimentConfig& config, const RunOptions&) {
  const CueModel model = model_from_config(config);
  auto columns = point_columns("point", model.cue_count());
  for (const char* c : {"p_c1", "decision", "n_samples", "n_common"}) columns.emplace_back(c);
  ResultTable table = detail::new_table(columns, "infer", config);

  std::string line;
  for (std::size_t p = 0; p < config.observations.size(); ++p) {
    const auto& x = config.observations[p];
    Rng rng = Rng::stream(config.seed, {kInferStream, p});
    const PosteriorEstimate est = is_posterior(model, x, config.infer_samples, rng);
    std::vector<Cell> row{static_cast<std::int64_t>(p)};
    for (double v : x) row.emplace_back(v);
    row.emplace_back(est.p_c1);
    row.emplace_back(static_cast<std::int64_t>(est.decision));
    row.emplace_back(static_cast<std::int64_t>(est.n_samples));
    row.emplace_back(static_cast<std::int64_t>(est.n_common));
    table.add_row(std::move(row));
    if (p == 0)
      line = "p_hat(C=1|x) = " + detail::fixed(est.p_c1, 6) + " (" +
             std::string(to_string(est.decision)) + ")";
  }
  return Report{{{"posterior", std::move(table)}}, std::move(line)};
}

Report exact_report(const ExperimentConfig& config, const RunOptions&) {
  const CueModel model = model_from_config(config);
  auto columns = point_columns("point", model.cue_count());
  for (const char* c : {"exact_p_c1", "quadrature_p_c1", "log_marginal_common",
                        "log_marginal_separate", "decision"})
    columns.emplace_back(c);
  ResultTable table = detail::new_table(columns, "exact", config);

  std::string line;
  for (std::size_t p = 0; p < config.observations.size(); ++p) {
    const auto& x = config.observations[p];
    const LogMarginals lm = exact_log_marginals(model, x);
    const double exact = posterior_from_marginals(model, lm);
    double quad = std::numeric_limits<double>::quiet_NaN();
    try {
      quad = quadrature_posterior(model, x);
    } catch (const CostGuard&) {
      // too many dimensions for the grid; the column stays empty
    }
    std::vector<Cell> row{static_cast<std::int64_t>(p)};
    for (double v : x) row.emplace_back(v);
    row.emplace_back(exact);
    row.emplace_back(quad);
    row.emplace_back(lm.common);
    row.emplace_back(lm.separate);
    row.emplace_back(static_cast<std::int64_t>(decide(exact)));
    table.add_row(std::move(row));
    if (p == 0)
      line = "P(C=1|x) = " + detail::fixed(exact, 6) + " (" + std::string(to_string(decide(exact))) +
             ")";
  }
  return Report{{{"posterior", std::move(table)}}, std::move(line)};
}

Report run_experiment(std::string_view subcommand, const ExperimentConfig& config,
                      const RunOptions& options) {
  if (subcommand == "infer") return infer_report(config, options);
  if (subcommand == "exact") return exact_report(config, options);
  if (subcommand == "exp1") return exp1_population(config, options);
  if (subcommand == "exp2") return exp2_convergence(config, options);
  if (subcommand == "exp3") return exp3_sweep(config, options);
  if (subcommand == "exp4") return exp4_disparity(config, options);
  if (subcommand == "multi") return exp_multi(config, options);
  if (subcommand == "samediff") return exp_samediff(config, options);
  if (subcommand == "theorem1") return theorem1_check(config, options);
  if (subcommand == "lemma1") return lemma1_check(config, options);
  throw InvalidParameter("unknown subcommand '" + std::string(subcommand) + "'");
}

ExperimentConfig load_config(const RunConfig& run) {
  ExperimentConfig config;
  if (!run.config_path.empty()) {
    config = parse_config(read_file(run.config_path));
  } else if (!run.preset.empty()) {
    const auto text = find_preset(run.preset);
    if (!text) throw ConfigError(0, "", "unknown preset '" + run.preset + "'");
    config = parse_config(*text);
  } else if (const auto text = find_preset(run.subcommand)) {
    config = parse_config(*text);
  }
  for (const auto& assignment : run.overrides) apply_override(config, assignment);
  if (run.seed) config.seed = *run.seed;
  validate(config);
  return config;
}

int run(const RunConfig& run, std::ostream& out, std::ostream& err) {
  if (std::find(subcommands().begin(), subcommands().end(), run.subcommand) == subcommands().end()) {
    err << "error: unknown subcommand '" << run.subcommand << "'\n";
    return kExitUsage;
  }
  if (run.jobs < 1) {
    err << "error: --jobs must be >= 1\n";
    return kExitUsage;
  }

  ExperimentConfig config;
  try {
    config = load_config(run);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const Report report = run_experiment(run.subcommand, config, RunOptions{run.jobs});
    const std::filesystem::path dir = run.output_dir.empty() ? config.output_dir : run.output_dir;
    std::filesystem::create_directories(dir);
    std::vector<std::string> written;
    for (const auto& [name, table] : report.tables) {
      const auto path = dir / (run.subcommand + "_" + name + ".csv");
      std::ofstream file(path, std::ios::binary);
      if (!file) throw Error("cannot write '" + path.string() + "'");
      write_csv(file, table);
      if (!file) throw Error("write failed for '" + path.string() + "'");
      written.push_back(path.string());
    }
    out << run.subcommand << ": " << report.summary << " -> " << written.front() << '\n';
  } catch (const std::exception& e) {
    err << run.subcommand << " failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  std::string seed_text;
  bool list_presets = false;
  CLI::App app{"Causal inference in cue combination by importance sampling"};
  app.name("cuecomb");
  std::string names;
  for (auto n : subcommands()) names += (names.empty() ? "" : ", ") + std::string(n);
  app.add_option("subcommand", rc.subcommand, "One of: " + names);
  auto* config_opt = app.add_option("--config", rc.config_path, "Config file");
  app.add_option("--preset", rc.preset, "Bundled preset name")->excludes(config_opt);
  app.add_option("--seed", seed_text, "Seed (unsigned 64-bit), overrides the config");
  app.add_option("--out", rc.output_dir, "Output directory");
  app.add_option("--jobs", rc.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--set", rc.overrides, "key=value override, repeatable");
  app.add_flag("--list-presets", list_presets, "Print bundled preset names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (list_presets) {
    for (auto n : preset_names()) out << n << '\n';
    return kExitOk;
  }
  if (rc.subcommand.empty()) {
    err << app.help();
    return kExitUsage;
  }
  if (!seed_text.empty()) {
    std::uint64_t seed = 0;
    const char* end = seed_text.data() + seed_text.size();
    const auto [ptr, ec] = std::from_chars(seed_text.data(), end, seed);
    if (ec != std::errc{} || ptr != end) {
      err << "error: --seed expects an unsigned 64-bit integer\n";
      return kExitUsage;
    }
    rc.seed = seed;
  }
  return run(rc, out, err);
}

}  // namespace cuecomb
