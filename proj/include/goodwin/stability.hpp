#pragma once

#include <cstddef>
#include <vector>

#include "goodwin/annual_series.hpp"

namespace goodwin {

/// Significance level for the parameter-stability tests.
enum class StabilityLevel {
    kFivePercent,
    kOnePercent,
};

/**
 * Standardized one-step-ahead prediction errors (recursive residuals) of an
 * OLS model. For observation r > k,
 *
 *   w_r = (y_r - x_r' b_{r-1}) / sqrt(1 + x_r' (X_{r-1}' X_{r-1})^{-1} x_r)
 *
 * with b_{r-1} fit on the first r-1 rows. The result has n - k entries.
 * Throws RankDeficient if the first k rows are singular and
 * TooFewObservations if n <= k.
 */
[[nodiscard]] std::vector<double> recursive_residuals(
    const std::vector<double>& y, const std::vector<std::vector<double>>& regressors,
    bool intercept = true);

/// One boundary-crossing test: the plotted statistic with its band.
struct StabilityPath {
    int start_year = 0;              // year of the first plotted point
    std::vector<double> statistic;   // cumulated path, one entry per recursive residual
    std::vector<double> lower;       // lower band
    std::vector<double> upper;       // upper band
    bool stable = false;             // true when the path never leaves the band
};

struct StabilityTestResult {
    StabilityPath cusum;    // cumulated sums against the Brown-Durbin-Evans lines
    StabilityPath cusumsq;  // cumulated squares against a parallel band around (r-k)/m
    std::size_t n_recursive = 0;
    StabilityLevel level = StabilityLevel::kOnePercent;
};

/**
 * CUSUM and CUSUM-of-squares tests on an OLS model given by y and its
 * regressor columns (year bookkeeping via start_year). Requires at least
 * three recursive residuals. A model that fits the data to numerical
 * exactness yields flat, trivially stable paths.
 */
[[nodiscard]] StabilityTestResult stability_tests(
    const std::vector<double>& y, const std::vector<std::vector<double>>& regressors,
    bool intercept = true, int start_year = 0,
    StabilityLevel level = StabilityLevel::kOnePercent);

/// Convenience overload on aligned annual series (same conventions as ols).
[[nodiscard]] StabilityTestResult stability_tests(
    const AnnualSeries& y, const std::vector<AnnualSeries>& regressors,
    bool intercept = true, StabilityLevel level = StabilityLevel::kOnePercent);

/// Traditional name for the combined test pair.
[[nodiscard]] inline StabilityTestResult cusum(
    const AnnualSeries& y, const std::vector<AnnualSeries>& regressors, bool intercept = true,
    StabilityLevel level = StabilityLevel::kOnePercent) {
    return stability_tests(y, regressors, intercept, level);
}

/// Slope factor for the CUSUM boundary a*(sqrt(m) + 2(r-k)/sqrt(m)).
[[nodiscard]] double cusum_boundary_factor(StabilityLevel level);

/**
 * Half-width of the CUSUM-of-squares band for m recursive residuals.
 * Values come from a frozen Monte Carlo table of the two-sided crossing
 * statistic max_r |S_r - (r-k)/m|, interpolated on the index m/2 - 1.
 */
[[nodiscard]] double cusumsq_band_halfwidth(std::size_t m, StabilityLevel level);

}  // namespace goodwin
