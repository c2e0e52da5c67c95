#pragma once

namespace goodwin::dist {

/// Standard normal CDF.
[[nodiscard]] double normal_cdf(double x);

/// Chi-square upper tail probability P(X > x) with df degrees of freedom.
[[nodiscard]] double chi_squared_sf(double x, double df);

/// Two-sided p-value for a t statistic with df degrees of freedom.
[[nodiscard]] double t_two_sided_p(double t, double df);

/// F distribution upper tail probability P(F > x).
[[nodiscard]] double f_sf(double x, double df1, double df2);

/// Standard normal quantile (inverse CDF).
[[nodiscard]] double normal_quantile(double p);

}  // namespace goodwin::dist
