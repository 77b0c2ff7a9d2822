// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "cuecomb/cli.hpp"
#include "cuecomb/config.hpp"
#include "cuecomb/experiments.hpp"
#include "cuecomb/oracle.hpp"
#include "cuecomb/presets.hpp"
#include "cuecomb/rng.hpp"

using namespace cuecomb;

namespace {

// Tolerances and limits, one block per criterion.
constexpr double kOracleTol = 1e-6;
constexpr double kOracleSeconds = 10;

constexpr double kSlopeTarget = -0.5;
constexpr double kSlopeTol = 0.15;
constexpr double kTheoremSeconds = 120;

constexpr double kExp2ErrorRate = 0.06;
constexpr double kExp2OracleGap = 0.02;
constexpr std::size_t kExp2CheckN = 1000;
constexpr double kExp2Seconds = 300;

constexpr double kExp1Deviation = 0.002;
constexpr std::uint64_t kExp1Trials = 20;

constexpr double kExp3CellRate = 0.12;
constexpr double kExp3MinSigmaS = 2;

constexpr double kExp4Deviation = 0.05;
constexpr std::size_t kExp4CheckN = 1000;
constexpr double kExp4Seconds = 900;

constexpr double kGeneralRate = 0.06;
constexpr std::size_t kMultiCheckN = 1000;
constexpr std::size_t kSameDiffCheckN = 5000;

constexpr std::size_t kLemmaRepetitions = 10000;

const std::vector<std::size_t> kDeterminismJobs{1, 4, 8};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ExperimentConfig preset(const char* name) { return parse_config(*find_preset(name)); }

std::size_t row_for(const ResultTable& t, const std::string& column, double value) {
  for (std::size_t i = 0; i < t.row_count(); ++i)
    if (t.value(i, column) == value) return i;
  throw std::runtime_error("no row with " + column + " = " + std::to_string(value));
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

Outcome oracle_soundness() {
  const auto start = Clock::now();
  Rng rng(20240601);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto m = CueModel::two_cue(0.5, rng.uniform(1, 8), rng.uniform(1, 8), rng.uniform(1, 8));
    const std::vector<double> x{rng.uniform(-20, 20), rng.uniform(-20, 20)};
    worst = std::max(worst, std::fabs(exact_posterior(m, x) - quadrature_posterior(m, x)));
  }
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
    std::vector<double> sigmas(n), x(n);
    for (auto& s : sigmas) s = rng.uniform(1, 3);
    for (auto& v : x) v = rng.uniform(-12, 12);
    const auto m = CueModel::same_different(0.5, 10, rng.uniform(1, 3), sigmas);
    worst = std::max(worst, std::fabs(exact_posterior(m, x) - quadrature_posterior(m, x)));
  }
  const double secs = seconds_since(start);
  return {worst <= kOracleTol && secs < kOracleSeconds,
          "max |exact - quadrature| " + std::to_string(worst) + " over 150 instances, " + num(secs, 1) + " s"};
}

Outcome theorem_convergence() {
  const auto start = Clock::now();
  const auto c = preset("theorem1");
  const auto errs = theorem1_check(c).table("errors");
  const auto means = errs.column("mean_abs_error");
  bool decreasing = true;
  for (std::size_t i = 1; i < means.size(); ++i) decreasing = decreasing && means[i] < means[i - 1];
  const double slope = std::stod(errs.meta("log_log_slope_point0"));
  const double secs = seconds_since(start);
  std::string detail = "slope " + num(slope, 3) + ", mean errors";
  for (double m : means) detail += " " + num(m, 5);
  detail += ", " + num(secs, 1) + " s";
  return {decreasing && std::fabs(slope - kSlopeTarget) <= kSlopeTol && secs < kTheoremSeconds, detail};
}

Outcome experiment2() {
  const auto start = Clock::now();
  const auto c = preset("exp2");
  const auto report = exp2_convergence(c);
  const auto& s = report.table("summary");
  // Reported alongside the pooled check: repetitions whose own curve is not
  // strictly decreasing.
  const auto& per_rep = report.table("per_repetition");
  std::size_t bumpy = 0;
  for (std::size_t r = 0; r < c.repetitions; ++r) {
    double prev = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (std::size_t i = 0; i < per_rep.row_count(); ++i) {
      if (per_rep.value(i, "repetition") != static_cast<double>(r)) continue;
      const double v = per_rep.value(i, "mean_error");
      ok = ok && v < prev;
      prev = v;
    }
    if (!ok) ++bumpy;
  }
  const auto mean_error = s.column("mean_error");
  bool decreasing = true;
  for (std::size_t i = 1; i < mean_error.size(); ++i)
    decreasing = decreasing && mean_error[i] < mean_error[i - 1];
  const std::size_t row = row_for(s, "n_samples", kExp2CheckN);
  const double rate = s.value(row, "error_rate");
  const double gap = std::fabs(s.value(row, "is_cause_error_rate") - s.value(row, "oracle_cause_error_rate"));
  const double secs = seconds_since(start);
  return {decreasing && rate <= kExp2ErrorRate && gap <= kExp2OracleGap && secs < kExp2Seconds,
          std::string("mean error decreasing: ") + (decreasing ? "yes" : "no") + " (" +
              std::to_string(bumpy) + " of " + std::to_string(c.repetitions) +
              " repetitions not strictly decreasing), error rate at N=1000 " +
              num(rate) + " (limit " + num(kExp2ErrorRate, 2) + "), cause-error gap to oracle " + num(gap) +
              ", " + num(secs, 1) + " s"};
}

Outcome experiment1() {
  auto c = preset("exp1");
  double total = 0.0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < kExp1Trials; ++seed) {
    c.seed = seed;
    const double d = std::stod(exp1_population(c).table("population").meta("mean_abs_deviation"));
    total += d;
    worst = std::max(worst, d);
  }
  const double avg = total / static_cast<double>(kExp1Trials);
  return {avg < kExp1Deviation,
          "mean |normalized rate - normalized likelihood| " + num(avg, 6) + " over 20 trials (worst " +
              num(worst, 6) + ")"};
}

Outcome experiment3() {
  const auto start = Clock::now();
  const auto t = exp3_sweep(preset("exp3")).table("grid");
  double worst = 0.0;
  std::size_t over = 0, cells = 0;
  double sum1 = 0.0, sum4 = 0.0;
  std::size_t n1 = 0, n4 = 0;
  for (std::size_t i = 0; i < t.row_count(); ++i) {
    const double ss = t.value(i, "sigma_s");
    const double r = t.value(i, "error_rate");
    if (ss >= kExp3MinSigmaS) {
      ++cells;
      worst = std::max(worst, r);
      if (r >= kExp3CellRate) ++over;
    }
    if (ss == 1.0) sum1 += r, ++n1;
    if (ss == 4.0) sum4 += r, ++n4;
  }
  const double mean1 = sum1 / static_cast<double>(n1);
  const double mean4 = sum4 / static_cast<double>(n4);
  return {over == 0 && mean1 > mean4,
          std::to_string(over) + " of " + std::to_string(cells) + " cells with sigma_s >= 2 at or above " +
              num(kExp3CellRate, 2) + " (worst " + num(worst) + "); grid mean sigma_s=1 " + num(mean1) +
              " vs sigma_s=4 " + num(mean4) + ", " + num(seconds_since(start), 1) + " s"};
}

Outcome experiment4() {
  const auto start = Clock::now();
  const auto c = preset("exp4");
  const auto dev = exp4_disparity(c).table("deviation");
  const auto d = dev.column("max_abs_deviation");
  bool closer = true;
  for (std::size_t i = 1; i < d.size(); ++i) closer = closer && d[i] < d[i - 1];
  const double at = dev.value(row_for(dev, "n_samples", kExp4CheckN), "max_abs_deviation");
  const double secs = seconds_since(start);
  std::string detail = std::to_string(c.disparity_trials) + " trials, max bin deviation";
  for (std::size_t i = 0; i < d.size(); ++i)
    detail += " N=" + std::to_string(static_cast<long>(dev.value(i, "n_samples"))) + ": " + num(d[i]);
  detail += ", " + num(secs, 1) + " s";
  return {at <= kExp4Deviation && closer && secs < kExp4Seconds, detail};
}

Outcome generalizations() {
  auto multi = preset("multi");
  multi.target_error_rate = kGeneralRate;
  auto samediff = preset("samediff");
  samediff.target_error_rate = kGeneralRate;
  const auto tm = exp_multi(multi).table("summary");
  const auto ts = exp_samediff(samediff).table("summary");

  auto rate_at = [](const ResultTable& t, double cues, std::size_t n) {
    for (std::size_t i = 0; i < t.row_count(); ++i)
      if (t.value(i, "n_cues") == cues && t.value(i, "n_samples") == static_cast<double>(n))
        return t.value(i, "error_rate");
    throw std::runtime_error("missing summary row");
  };
  auto needed = [](const ResultTable& t, int cues) {
    return std::stoul(t.meta("min_samples_for_target_n" + std::to_string(cues)));
  };
  const double m3 = rate_at(tm, 3, kMultiCheckN), m10 = rate_at(tm, 10, kMultiCheckN);
  const double s3 = rate_at(ts, 3, kSameDiffCheckN), s10 = rate_at(ts, 10, kSameDiffCheckN);
  const auto nm3 = needed(tm, 3), nm10 = needed(tm, 10), ns3 = needed(ts, 3), ns10 = needed(ts, 10);
  const bool rates = m3 <= kGeneralRate && m10 <= kGeneralRate && s3 <= kGeneralRate && s10 <= kGeneralRate;
  const bool scaling = nm3 > 0 && nm10 > 0 && nm10 <= nm3 && ns3 > 0 && ns10 > 0 && ns10 <= ns3;
  return {rates && scaling,
          "multi N=1000: t=3 " + num(m3) + ", t=10 " + num(m10) + "; same-different N=5000: n=3 " + num(s3) +
              ", n=10 " + num(s10) + "; N needed multi " + std::to_string(nm3) + "/" + std::to_string(nm10) +
              ", same-different " + std::to_string(ns3) + "/" + std::to_string(ns10)};
}

Outcome lemma_bounds() {
  auto c = preset("lemma1");
  c.lemma_repetitions = kLemmaRepetitions;
  std::size_t cells = 0, violations = 0;
  for (const char* dist : {"normal", "uniform"}) {
    c.lemma_distribution = dist;
    const auto t = lemma1_check(c).table("coverage");
    cells += t.row_count();
    violations += std::stoul(t.meta("violations"));
  }
  return {violations == 0,
          std::to_string(violations) + " of " + std::to_string(cells) +
              " (lemma, N, epsilon) cells below the bound, normal and uniform draws"};
}

Outcome determinism() {
  // Every subcommand at smoke scale, then exp2 at a size that spreads work
  // over all workers.
  std::size_t compared = 0, mismatched = 0;
  auto check = [&](std::string_view sub, const ExperimentConfig& c) {
    std::vector<std::string> first;
    for (std::size_t jobs : kDeterminismJobs) {
      for (int rerun = 0; rerun < (jobs == 1 ? 2 : 1); ++rerun) {
        const auto report = run_experiment(sub, c, {jobs});
        std::vector<std::string> csv;
        for (const auto& nt : report.tables) csv.push_back(to_csv(nt.table));
        if (first.empty()) {
          first = csv;
          continue;
        }
        ++compared;
        if (csv != first) ++mismatched;
      }
    }
  };
  const auto smoke = preset("smoke");
  for (auto sub : subcommands()) check(sub, smoke);
  auto c = preset("exp2");
  c.n_trials = 200;
  c.repetitions = 2;
  c.sample_sizes = {10, 100, 1000};
  check("exp2", c);
  return {mismatched == 0,
          std::to_string(mismatched) + " of " + std::to_string(compared) +
              " reruns differ (jobs 1, 1, 4, 8; all subcommands)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle soundness", oracle_soundness},
      {"theorem convergence", theorem_convergence},
      {"experiment 2", experiment2},
      {"experiment 1", experiment1},
      {"experiment 3", experiment3},
      {"experiment 4", experiment4},
      {"generalizations", generalizations},
      {"lemma bounds", lemma_bounds},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}
