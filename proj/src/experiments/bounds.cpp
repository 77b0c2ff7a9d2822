#include <algorithm>
#include <cmath>

#include "cuecomb/errors.hpp"
#include "cuecomb/experiments.hpp"
#include "cuecomb/oracle.hpp"
#include "cuecomb/parallel.hpp"
#include "cuecomb/sampler.hpp"
#include "cuecomb/stats.hpp"
#include "harness.hpp"

namespace cuecomb {

using detail::fixed;
using detail::new_table;
using detail::StreamTag;
using detail::tag;

std::string code_version() { return CUECOMB_VERSION; }

Report theorem1_check(const ExperimentConfig& config, const RunOptions& options) {
  const CueModel model = model_from_config(config);
  const auto& sizes = config.sample_sizes;
  const std::size_t reps = config.repetitions;

  ResultTable errors = new_table({"point", "n_samples", "repetitions", "mean_abs_error", "q50",
                                  "q90", "q99", "max", "exact"},
                                 "theorem1_check", config);
  ResultTable coverage =
      new_table({"point", "n_samples", "epsilon", "coverage", "lo", "hi"}, "theorem1_check", config);

  std::string line;
  for (std::size_t p = 0; p < config.observations.size(); ++p) {
    const auto& x = config.observations[p];
    const double exact = exact_posterior(model, x);
    std::vector<double> means;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      std::vector<double> abs_err(reps);
      parallel_for(reps, options.jobs, [&](std::size_t r) {
        Rng rng = Rng::stream(config.seed, {tag(StreamTag::Theorem1), p, k, r});
        abs_err[r] = std::fabs(is_posterior(model, x, sizes[k], rng).p_c1 - exact);
      });
      means.push_back(stats::mean(abs_err));
      errors.add_row({static_cast<std::int64_t>(p), static_cast<std::int64_t>(sizes[k]),
                      static_cast<std::int64_t>(reps), means.back(),
                      stats::quantile(abs_err, 0.5), stats::quantile(abs_err, 0.9),
                      stats::quantile(abs_err, 0.99), *std::max_element(abs_err.begin(), abs_err.end()),
                      exact});
      for (double eps : config.epsilons) {
        const auto hits = static_cast<std::size_t>(
            std::count_if(abs_err.begin(), abs_err.end(), [&](double e) { return e < eps; }));
        const auto ci = stats::wilson(hits, reps);
        coverage.add_row({static_cast<std::int64_t>(p), static_cast<std::int64_t>(sizes[k]), eps,
                          static_cast<double>(hits) / static_cast<double>(reps), ci.lo, ci.hi});
      }
    }
    if (sizes.size() >= 2) {
      std::vector<double> xs(sizes.begin(), sizes.end());
      const double slope = stats::log_log_slope(xs, means);
      errors.set_meta("log_log_slope_point" + std::to_string(p), format_real(slope));
      if (p == 0) line = "log-log slope of mean |p_hat - exact| " + fixed(slope, 3);
    }
  }
  if (line.empty()) line = std::to_string(errors.row_count()) + " rows";
  return Report{{{"errors", std::move(errors)}, {"coverage", std::move(coverage)}}, std::move(line)};
}

namespace {

double draw(Rng& rng, bool uniform, double mu, double sd) {
  if (uniform) {
    const double h = std::sqrt(3.0) * sd;
    return rng.uniform(mu - h, mu + h);
  }
  return rng.normal(mu, sd);
}

}  // namespace

Report lemma1_check(const ExperimentConfig& config, const RunOptions& options) {
  const bool shared = config.lemma_shared_draws;
  const double mu1 = config.lemma_mu_1;
  const double sd1 = config.lemma_sd_1;
  const double mu2 = shared ? mu1 : config.lemma_mu_2;
  const double sd2 = shared ? sd1 : config.lemma_sd_2;
  if (!(std::fabs(mu1) >= 1e-6)) throw InvalidParameter("lemma_mu_1 must be nonzero");
  if (!(std::fabs(mu2) >= 1e-6)) throw InvalidParameter("lemma_mu_2 too close to zero");
  const bool uniform = config.lemma_distribution == "uniform";
  const std::size_t reps = config.lemma_repetitions;
  const auto& eps_list = config.lemma_epsilons;

  ResultTable table = new_table({"lemma", "n", "epsilon", "repetitions", "coverage", "lo", "hi",
                                 "bound_raw", "bound", "satisfied"},
                                "lemma1_check", config);
  table.set_meta("mu_1", format_real(mu1));
  table.set_meta("sd_1", format_real(sd1));
  table.set_meta("mu_2", format_real(mu2));
  table.set_meta("sd_2", format_real(sd2));

  std::size_t violations = 0;
  for (std::size_t k = 0; k < config.lemma_sizes.size(); ++k) {
    const std::size_t n = config.lemma_sizes[k];
    // Deviations of the ratio of sums and of the reciprocal sample mean.
    std::vector<double> ratio_dev(reps), recip_dev(reps);
    parallel_for(reps, options.jobs, [&](std::size_t r) {
      Rng rng = Rng::stream(config.seed, {tag(StreamTag::Lemma), k, r});
      double sx = 0.0, sy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double xv = draw(rng, uniform, mu1, sd1);
        sx += xv;
        sy += shared ? xv : draw(rng, uniform, mu2, sd2);
      }
      const double nn = static_cast<double>(n);
      ratio_dev[r] = std::fabs(sx / sy - mu1 / mu2);
      recip_dev[r] = std::fabs(nn / sx - 1.0 / mu1);
    });

    const double nn = static_cast<double>(n);
    for (int lemma = 1; lemma <= 2; ++lemma) {
      const auto& dev = lemma == 1 ? ratio_dev : recip_dev;
      for (double eps : eps_list) {
        const double e2 = eps * eps;
        const double bound_raw =
            lemma == 1 ? 1.0 - 16.0 * sd1 * sd1 / (nn * mu2 * mu2 * e2) -
                             16.0 * mu1 * mu1 * sd2 * sd2 / (nn * std::pow(mu2, 4) * e2)
                       : 1.0 - sd1 * sd1 / (nn * mu1 * mu1 * e2);
        const double bound = std::clamp(bound_raw, 0.0, 1.0);
        const auto hits = static_cast<std::size_t>(
            std::count_if(dev.begin(), dev.end(), [&](double d) { return d < eps; }));
        const double cov = static_cast<double>(hits) / static_cast<double>(reps);
        const auto ci = stats::wilson(hits, reps);
        const bool ok = cov >= bound;
        if (!ok) ++violations;
        table.add_row({static_cast<std::int64_t>(lemma), static_cast<std::int64_t>(n), eps,
                       static_cast<std::int64_t>(reps), cov, ci.lo, ci.hi, bound_raw, bound,
                       static_cast<std::int64_t>(ok ? 1 : 0)});
      }
    }
  }
  table.set_meta("violations", std::to_string(violations));
  std::string line = std::to_string(table.row_count()) + " cells, " + std::to_string(violations) +
                     " below bound";
  return Report{{{"coverage", std::move(table)}}, std::move(line)};
}

}  // namespace cuecomb
