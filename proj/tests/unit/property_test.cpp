#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cuecomb/neural.hpp"
#include "cuecomb/oracle.hpp"
#include "cuecomb/sampler.hpp"

using namespace cuecomb;

namespace {

double logit(double p) { return std::log(p) - std::log1p(-p); }

struct Instance {
  CueModel model;
  std::vector<double> x;
};

Instance random_instance(Rng& rng, ModelKind kind) {
  const std::size_t n = kind == ModelKind::TwoCue ? 2 : 2 + static_cast<std::size_t>(rng.uniform() * 6);
  std::vector<double> sigmas(n), x(n);
  for (auto& s : sigmas) s = rng.uniform(0.5, 8);
  for (auto& v : x) v = rng.uniform(-20, 20);
  ModelParameters p;
  p.prior_c1 = rng.uniform(0.05, 0.95);
  p.sigma_s = rng.uniform(0.5, 8);
  p.sigmas = sigmas;
  p.half_range = rng.uniform(2, 15);
  return {make_model(kind, p), x};
}

}  // namespace

TEST_CASE("posteriors are probabilities and mirror-symmetric") {
  Rng rng(101);
  for (auto kind : {ModelKind::TwoCue, ModelKind::MultiCue, ModelKind::SameDifferent}) {
    for (int i = 0; i < 100; ++i) {
      const auto [m, x] = random_instance(rng, kind);
      const double p = exact_posterior(m, x);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      std::vector<double> neg(x.size());
      std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -v; });
      CHECK(exact_posterior(m, neg) == doctest::Approx(p).epsilon(1e-10));
    }
  }
}

TEST_CASE("posterior odds move with prior odds only") {
  Rng rng(102);
  for (int i = 0; i < 100; ++i) {
    const auto [m, x] = random_instance(rng, ModelKind::MultiCue);
    std::vector<double> sigmas(m.sigmas().begin(), m.sigmas().end());
    const auto other = CueModel::multi_cue(0.2, m.sigma_s(), sigmas);
    const double lhs = logit(exact_posterior(m, x)) - logit(exact_posterior(other, x));
    const double rhs = logit(m.prior_c1()) - logit(0.2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("relabelling cues changes nothing") {
  Rng rng(103);
  for (auto kind : {ModelKind::MultiCue, ModelKind::SameDifferent}) {
    for (int i = 0; i < 50; ++i) {
      const auto [m, x] = random_instance(rng, kind);
      std::vector<std::size_t> perm(x.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::rotate(perm.begin(), perm.begin() + 1, perm.end());
      ModelParameters p{m.prior_c1(), m.sigma_s(), {}, m.half_range()};
      std::vector<double> px;
      for (std::size_t j : perm) {
        p.sigmas.push_back(m.sigmas()[j]);
        px.push_back(x[j]);
      }
      CHECK(exact_posterior(make_model(kind, p), px) == doctest::Approx(exact_posterior(m, x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("two cues as a multi-cue model") {
  Rng rng(104);
  for (int i = 0; i < 50; ++i) {
    const auto [m, x] = random_instance(rng, ModelKind::TwoCue);
    const auto multi = CueModel::multi_cue(m.prior_c1(), m.sigma_s(), {m.sigmas()[0], m.sigmas()[1]});
    CHECK(exact_posterior(multi, x) == doctest::Approx(exact_posterior(m, x)).epsilon(1e-12));
  }
}

TEST_CASE("estimates are probabilities, reproducible and consistent") {
  Rng rng(105);
  for (auto kind : {ModelKind::TwoCue, ModelKind::MultiCue, ModelKind::SameDifferent}) {
    for (int i = 0; i < 20; ++i) {
      const auto [m, x] = random_instance(rng, kind);
      const std::uint64_t seed = rng.next_u64();
      Rng a(seed), b(seed);
      const auto ea = is_posterior(m, x, 200, a);
      const auto eb = is_posterior(m, x, 200, b);
      CHECK(ea.p_c1 == eb.p_c1);
      CHECK(ea.p_c1 >= 0.0);
      CHECK(ea.p_c1 <= 1.0);
      CHECK(ea.n_indicator == ea.n_common);
      CHECK(ea.decision == decide(ea.p_c1));
    }
  }
}

TEST_CASE("estimator error shrinks with the sample size") {
  // Averaged over instances, the error at 20000 draws is well below that at 200.
  Rng rng(106);
  double small = 0.0, large = 0.0;
  for (int i = 0; i < 40; ++i) {
    const auto m = CueModel::two_cue(0.5, rng.uniform(3, 7), rng.uniform(3, 7), rng.uniform(3, 7));
    Trial t = sample_trial(m, rng);
    const double exact = exact_posterior(m, t.observations);
    small += std::fabs(is_posterior(m, t.observations, 200, rng).p_c1 - exact);
    large += std::fabs(is_posterior(m, t.observations, 20000, rng).p_c1 - exact);
  }
  CHECK(large < small / 4.0);
}

TEST_CASE("circuit readout units are complementary for random pools") {
  Rng rng(107);
  for (int i = 0; i < 30; ++i) {
    const auto [m, x] = random_instance(rng, ModelKind::TwoCue);
    const auto pool = build_pool(m, 200, 1e4, rng);
    const auto r = readout_expected(pool, x);
    CHECK(r.a1 + r.a2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.a1 >= 0.0);
    CHECK(r.a1 <= 1.0);
  }
}
