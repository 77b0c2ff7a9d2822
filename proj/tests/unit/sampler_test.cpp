#include <doctest.h>

#include <cmath>
#include <numeric>

#include "cuecomb/errors.hpp"
#include "cuecomb/oracle.hpp"
#include "cuecomb/sampler.hpp"

using namespace cuecomb;

namespace {

const std::vector<double> kOrigin{0, 0};

}  // namespace

TEST_CASE("weighted expectation basics") {
  Rng rng(1);
  auto src = [](Rng& r) { return r.normal(); };
  const double one = weighted_expectation(src, [](double s) { return -s * s; }, [](double) { return 1.0; },
                                          1000, rng);
  CHECK(one == 1.0);

  Rng a(2), b(2);
  const double wmean = weighted_expectation(src, [](double) { return 3.7; }, [](double s) { return s; }, 500, a);
  double plain = 0;
  for (int i = 0; i < 500; ++i) plain += b.normal();
  CHECK(wmean == doctest::Approx(plain / 500).epsilon(1e-12));
  CHECK_THROWS_AS(weighted_expectation(src, [](double) { return 0.0; }, [](double s) { return s; }, 0, a),
                  InvalidParameter);
}

TEST_CASE("conjugate gaussian posterior mean") {
  // Prior N(0,1), likelihood N(1; s, 1): posterior N(0.5, 0.5).
  Rng rng(3);
  const double m = weighted_expectation(
      [](Rng& r) { return r.normal(); }, [](double s) { return -0.5 * (1 - s) * (1 - s); },
      [](double s) { return s; }, 1000000, rng);
  CHECK(std::fabs(m - 0.5) < 0.005);
}

TEST_CASE("estimate at the origin") {
  const auto m = CueModel::two_cue(0.5, 4, 6, 6);
  Rng rng(4);
  const auto est = is_posterior(m, kOrigin, 100000, rng);
  CHECK(std::fabs(est.p_c1 - exact_posterior(m, kOrigin)) < 0.02);
  CHECK(est.n_common == est.n_indicator);
  CHECK(est.n_samples == 100000);
  CHECK(est.p_c1 == est.sum_common_weight / est.sum_total_weight);
}

TEST_CASE("degenerate inputs") {
  const auto sure = CueModel::two_cue(1 - 1e-12, 4, 6, 6);
  Rng rng(5);
  CHECK(is_posterior(sure, kOrigin, 1000, rng).p_c1 == 1.0);

  const auto m = CueModel::two_cue(0.5, 4, 6, 6);
  for (int s = 0; s < 50; ++s) {
    Rng r(static_cast<std::uint64_t>(s));
    const double p = is_posterior(m, std::vector<double>{1, -2}, 1, r).p_c1;
    CHECK((p == 0.0 || p == 1.0));
  }
  CHECK_THROWS_AS(is_posterior(m, kOrigin, 0, rng), InvalidParameter);
  CHECK_THROWS_AS(is_posterior(m, std::vector<double>{1, 2, 3}, 10, rng), ShapeMismatch);
}

TEST_CASE("far observations still give a finite estimate") {
  const auto m = CueModel::two_cue(0.5, 1, 1, 1);
  Rng rng(6);
  const auto est = is_posterior(m, std::vector<double>{60, -60}, 1000, rng);
  CHECK(std::isfinite(est.p_c1));
  CHECK(est.p_c1 >= 0.0);
  CHECK(est.p_c1 <= 1.0);
}

TEST_CASE("all weights underflowing is reported") {
  const auto m = CueModel::two_cue(0.5, 4, 6, 6);
  Rng rng(7);
  const LogWeightFn dead = [](std::span<const double>, std::span<const double>) {
    return -std::numeric_limits<double>::infinity();
  };
  CHECK_THROWS_AS(is_posterior_with(m, kOrigin, 100, rng, dead), EstimatorDegenerate);
}

TEST_CASE("a constant log offset does not change the estimate") {
  const auto m = CueModel::two_cue(0.5, 3, 5, 2);
  const std::vector<double> x{1.5, -4};
  for (double offset : {-700.0, -3.0, 0.0, 50.0, 700.0}) {
    Rng a(8), b(8);
    const auto base = is_posterior(m, x, 2000, a);
    const auto shifted = is_posterior_with(m, x, 2000, b, [&](std::span<const double> s, std::span<const double> o) {
      return log_likelihood_unchecked(m, s, o) + offset;
    });
    CHECK(shifted.p_c1 == doctest::Approx(base.p_c1).epsilon(1e-12));
    CHECK(shifted.decision == base.decision);
  }
}

TEST_CASE("same stream, same bits") {
  const auto m = CueModel::multi_cue(0.5, 4, {3, 5, 7});
  const std::vector<double> x{1, 2, -3};
  Rng a(9), b(9);
  CHECK(is_posterior(m, x, 5000, a).p_c1 == is_posterior(m, x, 5000, b).p_c1);
}

TEST_CASE("batch matches single calls and follows trial ids") {
  const auto m = CueModel::two_cue(0.5, 4, 6, 6);
  std::vector<std::vector<double>> xs;
  for (int i = 0; i < 12; ++i) xs.push_back({static_cast<double>(i) - 5, 2.0 * i - 10});

  Rng single = Rng::stream(99, {0});
  const auto one = is_posterior_batch(m, std::span(xs).first(1), 300, 99);
  CHECK(one[0].p_c1 == is_posterior(m, xs[0], 300, single).p_c1);

  const auto serial = is_posterior_batch(m, xs, 300, 99);
  const auto parallel = is_posterior_batch(m, xs, 300, 99, {.jobs = 4});
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(serial[i].p_c1 == parallel[i].p_c1);

  std::vector<std::size_t> perm(xs.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::swap(perm[2], perm[7]);
  std::vector<std::vector<double>> permuted;
  std::vector<std::uint64_t> ids;
  for (std::size_t i : perm) {
    permuted.push_back(xs[i]);
    ids.push_back(i);
  }
  const auto shuffled = is_posterior_batch(m, permuted, 300, 99, {.jobs = 3, .trial_ids = ids});
  for (std::size_t j = 0; j < perm.size(); ++j) CHECK(shuffled[j].p_c1 == serial[perm[j]].p_c1);
}

TEST_CASE("batch errors carry the failing index") {
  const auto m = CueModel::two_cue(0.5, 4, 6, 6);
  std::vector<std::vector<double>> xs{{0, 0}, {1, 1}, {1, 2, 3}, {0, 1}, {4}};
  try {
    is_posterior_batch(m, xs, 100, 1, {.jobs = 4});
    FAIL("expected BatchError");
  } catch (const BatchError& e) {
    CHECK(e.trial_index() == 2);
  }
}
