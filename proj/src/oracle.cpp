#include "cuecomb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cuecomb/errors.hpp"
#include "cuecomb/special.hpp"

namespace cuecomb {

namespace {

constexpr double kLog2Pi = 1.83787706640934548356;  // log(2 pi)

void check_shape(const CueModel& model, std::span<const double> x, const char* who) {
  if (x.size() != model.cue_count())
    throw ShapeMismatch(std::string(who) + ": expected " +
                        std::to_string(model.cue_count()) + " observations, got " +
                        std::to_string(x.size()));
}

double log_normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * (kLog2Pi + z * z) - std::log(sd);
}

LogMarginals gaussian_prior_marginals(const CueModel& model, std::span<const double> x) {
  const double vs = model.sigma_s() * model.sigma_s();
  const auto sigmas = model.sigmas();
  const double n = static_cast<double>(x.size());

  double log_det_diag = 0.0;
  double sum_prec = 0.0;     // 1' D^-1 1
  double sum_prec_x = 0.0;   // 1' D^-1 x
  double sum_prec_x2 = 0.0;  // x' D^-1 x
  double separate = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = sigmas[i] * sigmas[i];
    log_det_diag += std::log(v);
    sum_prec += 1.0 / v;
    sum_prec_x += x[i] / v;
    sum_prec_x2 += x[i] * x[i] / v;
    separate += log_normal_pdf(x[i], 0.0, std::sqrt(vs + v));
  }
  const double denom = 1.0 + vs * sum_prec;
  const double log_det = log_det_diag + std::log(denom);
  const double quad = sum_prec_x2 - vs * sum_prec_x * sum_prec_x / denom;
  return {-0.5 * (n * kLog2Pi + log_det + quad), separate};
}

LogMarginals same_different_marginals(const CueModel& model, std::span<const double> x) {
  const double L = model.half_range();
  const double log_box = -std::log(2.0 * L);
  const double vs = model.sigma_s() * model.sigma_s();
  const auto sigmas = model.sigmas();
  const double n = static_cast<double>(x.size());

  double sum_prec = 0.0;
  double sum_prec_x = 0.0;
  double sum_prec_x2 = 0.0;
  double log_det_diag = 0.0;
  double separate = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = sigmas[i] * sigmas[i];
    sum_prec += 1.0 / v;
    sum_prec_x += x[i] / v;
    sum_prec_x2 += x[i] * x[i] / v;
    log_det_diag += std::log(v);
    const double tau = std::sqrt(vs + v);
    separate += log_box + special::log_normal_cdf_diff((x[i] - L) / tau, (x[i] + L) / tau);
  }
  // prod_i N(x_i; mu, v_i) = Z * N(mu; m, v)
  const double v = 1.0 / sum_prec;
  const double m = v * sum_prec_x;
  const double log_z = -0.5 * (n - 1.0) * kLog2Pi - 0.5 * log_det_diag + 0.5 * std::log(v) -
                       0.5 * (sum_prec_x2 - m * m / v);
  const double sd = std::sqrt(v);
  const double common =
      log_box + log_z + special::log_normal_cdf_diff((-L - m) / sd, (L - m) / sd);
  return {common, separate};
}

// log of the integral of exp(log_f) over [lo, hi] on an odd grid. With
// `richardson`, combines the h and 2h trapezoid sums to cancel the O(h^2)
// endpoint term of a bounded range.
template <typename LogF>
double log_integrate(double lo, double hi, std::size_t points, bool richardson,
                     LogF&& log_f, std::vector<double>& scratch) {
  scratch.resize(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points; ++k) {
    scratch[k] = log_f(lo + step * static_cast<double>(k));
    peak = std::max(peak, scratch[k]);
  }
  if (peak == -std::numeric_limits<double>::infinity()) return peak;

  double fine = 0.0;
  double coarse = 0.0;
  for (std::size_t k = 0; k < points; ++k) {
    const double f = std::exp(scratch[k] - peak);
    const double end_weight = (k == 0 || k + 1 == points) ? 0.5 : 1.0;
    fine += end_weight * f;
    if (k % 2 == 0) coarse += end_weight * f;
  }
  fine *= step;
  coarse *= 2.0 * step;
  const double value = richardson ? (4.0 * fine - coarse) / 3.0 : fine;
  return peak + std::log(value);
}

LogMarginals quadrature_gaussian_prior(const CueModel& model, std::span<const double> x,
                                       const QuadratureSpec& spec) {
  const double sigma_s = model.sigma_s();
  const auto sigmas = model.sigmas();
  const double max_sigma = *std::max_element(sigmas.begin(), sigmas.end());
  const double total_sd = std::sqrt(sigma_s * sigma_s + max_sigma * max_sigma);
  const double x_lo = std::min(0.0, *std::min_element(x.begin(), x.end()));
  const double x_hi = std::max(0.0, *std::max_element(x.begin(), x.end()));
  std::vector<double> scratch;

  const double common = log_integrate(
      x_lo - spec.grid_half_width * total_sd, x_hi + spec.grid_half_width * total_sd,
      spec.points_per_dim, false,
      [&](double s) {
        double acc = log_normal_pdf(s, 0.0, sigma_s);
        for (std::size_t i = 0; i < x.size(); ++i) acc += log_normal_pdf(x[i], s, sigmas[i]);
        return acc;
      },
      scratch);

  double separate = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double sd_i = std::sqrt(sigma_s * sigma_s + sigmas[i] * sigmas[i]);
    separate += log_integrate(
        std::min(0.0, x[i]) - spec.grid_half_width * sd_i,
        std::max(0.0, x[i]) + spec.grid_half_width * sd_i, spec.points_per_dim, false,
        [&](double s) { return log_normal_pdf(s, 0.0, sigma_s) + log_normal_pdf(x[i], s, sigmas[i]); },
        scratch);
  }
  return {common, separate};
}

LogMarginals quadrature_same_different(const CueModel& model, std::span<const double> x,
                                       const QuadratureSpec& spec) {
  const double L = model.half_range();
  const double log_box = -std::log(2.0 * L);
  const double sigma_s = model.sigma_s();
  const auto sigmas = model.sigmas();
  const double width = spec.grid_half_width;
  std::vector<double> outer_scratch;
  std::vector<double> inner_scratch;

  const double common = log_integrate(
      -L, L, spec.points_per_dim, true,
      [&](double mu) {
        double acc = log_box;
        for (std::size_t i = 0; i < x.size(); ++i) acc += log_normal_pdf(x[i], mu, sigmas[i]);
        return acc;
      },
      outer_scratch);

  // Per object: integral over s of N(x_i; s, sigma_i^2) * g(s), where
  // g(s) = (1/2L) * integral over mu in [-L, L] of N(s; mu, sigma_s^2).
  double separate = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s_lo = std::min(x[i] - width * sigmas[i], -L - width * sigma_s);
    const double s_hi = std::max(x[i] + width * sigmas[i], L + width * sigma_s);
    separate += log_integrate(
        s_lo, s_hi, spec.points_per_dim, false,
        [&](double s) {
          const double mu_lo = std::max(-L, s - width * sigma_s);
          const double mu_hi = std::min(L, s + width * sigma_s);
          if (!(mu_lo < mu_hi)) return -std::numeric_limits<double>::infinity();
          const double log_g = log_box + log_integrate(
                                             mu_lo, mu_hi, spec.points_per_dim, true,
                                             [&](double mu) { return log_normal_pdf(s, mu, sigma_s); },
                                             inner_scratch);
          return log_g + log_normal_pdf(x[i], s, sigmas[i]);
        },
        outer_scratch);
  }
  return {common, separate};
}

}  // namespace

double posterior_from_marginals(const CueModel& model, const LogMarginals& marginals) {
  const double log_odds = std::log(model.prior_c1()) + marginals.common -
                          std::log1p(-model.prior_c1()) - marginals.separate;
  if (log_odds >= 0.0) return 1.0 / (1.0 + std::exp(-log_odds));
  const double e = std::exp(log_odds);
  return e / (1.0 + e);
}

LogMarginals exact_log_marginals(const CueModel& model, std::span<const double> observations) {
  check_shape(model, observations, "exact_posterior");
  if (model.kind() == ModelKind::SameDifferent)
    return same_different_marginals(model, observations);
  return gaussian_prior_marginals(model, observations);
}

double exact_posterior(const CueModel& model, std::span<const double> observations) {
  return posterior_from_marginals(model, exact_log_marginals(model, observations));
}

void QuadratureSpec::validate() const {
  if (!(grid_half_width > 0.0) || !std::isfinite(grid_half_width))
    throw InvalidParameter("grid_half_width must be positive");
  if (points_per_dim < 101 || points_per_dim % 2 == 0)
    throw InvalidParameter("points_per_dim must be odd and at least 101");
}

LogMarginals quadrature_log_marginals(const CueModel& model,
                                      std::span<const double> observations,
                                      const QuadratureSpec& spec) {
  spec.validate();
  check_shape(model, observations, "quadrature_posterior");
  if (model.kind() == ModelKind::SameDifferent) {
    if (model.cue_count() > 3)
      throw CostGuard("quadrature oracle supports same-different models with at most 3 objects");
    return quadrature_same_different(model, observations, spec);
  }
  return quadrature_gaussian_prior(model, observations, spec);
}

double quadrature_posterior(const CueModel& model, std::span<const double> observations,
                            const QuadratureSpec& spec) {
  return posterior_from_marginals(model, quadrature_log_marginals(model, observations, spec));
}

Cause decide(double p_c1, double threshold) {
  if (!(p_c1 >= 0.0 && p_c1 <= 1.0))
    throw InvalidParameter("decide: probability must lie in [0, 1]");
  return p_c1 > threshold ? Cause::Common : Cause::Separate;
}

}  // namespace cuecomb
