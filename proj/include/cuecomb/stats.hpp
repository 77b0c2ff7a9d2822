#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cuecomb::stats {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 by default).
/// Returns [0, 1] when trials == 0.
Interval wilson(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

double mean(std::span<const double> values);

/// Linear-interpolated quantile (type 7) of an unsorted sample; q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace cuecomb::stats
