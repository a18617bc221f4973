#pragma once

namespace dsmimo {

/// Standard normal CDF, 0.5 * erfc(-x / sqrt(2)).
double std_normal_cdf(double x) noexcept;

/// Inverse of std_normal_cdf. Throws InvalidArgument unless 0 < p < 1.
double std_normal_quantile(double p);

}  // namespace dsmimo
