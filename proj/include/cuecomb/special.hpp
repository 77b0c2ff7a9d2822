#pragma once

#include <span>

namespace cuecomb::special {

/// log Phi(z), accurate far into both tails.
double log_normal_cdf(double z);

/// log(Phi(b) - Phi(a)) for a < b. Returns -infinity when a >= b.
double log_normal_cdf_diff(double a, double b);

/// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

/// log sum exp over a span; -infinity for an empty span.
double log_sum_exp(std::span<const double> values);

}  // namespace cuecomb::special
