#include "cuecomb/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cuecomb::special {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvSqrt2 = 0.70710678118654752440;

// log(1 - exp(x)) for x <= 0.
double log1m_exp(double x) {
  if (x > -std::numbers::ln2) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

}  // namespace

double log_normal_cdf(double z) {
  if (std::isnan(z)) return z;
  if (z > 5.0) return std::log1p(-0.5 * std::erfc(z * kInvSqrt2));
  if (z > -30.0) return std::log(0.5 * std::erfc(-z * kInvSqrt2));
  // Asymptotic series of the Mills ratio; relative error < 1e-12 here.
  const double inv_z2 = 1.0 / (z * z);
  const double series =
      1.0 + inv_z2 * (-1.0 + inv_z2 * (3.0 + inv_z2 * (-15.0 + inv_z2 * 105.0)));
  return -0.5 * z * z - std::log(-z) - 0.5 * std::log(2.0 * std::numbers::pi) +
         std::log(series);
}

double log_normal_cdf_diff(double a, double b) {
  if (!(a < b)) return -kInf;
  if (a >= 0.0) return log_normal_cdf_diff(-b, -a);
  if (b <= 0.0) {
    const double log_b = log_normal_cdf(b);
    const double log_a = log_normal_cdf(a);
    if (log_a == -kInf) return log_b;
    return log_b + log1m_exp(log_a - log_b);
  }
  // a < 0 < b: both erf terms are non-negative, so nothing cancels.
  return std::log(0.5 * (std::erf(b * kInvSqrt2) - std::erf(a * kInvSqrt2)));
}

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::fabs(a - b)));
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -kInf;
  const double hi = *std::max_element(values.begin(), values.end());
  if (hi == -kInf || hi == kInf) return hi;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - hi);
  return hi + std::log(sum);
}

}  // namespace cuecomb::special
