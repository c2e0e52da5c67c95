#pragma once

#include <cstddef>

#include "goodwin/annual_series.hpp"

namespace goodwin {

enum class DeterministicSpec {
    kConstant,       // intercept only
    kConstantTrend,  // intercept and linear trend
};

struct AdfResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t lags_used = 0;
    DeterministicSpec spec = DeterministicSpec::kConstant;
};

/**
 * Augmented Dickey-Fuller unit-root test.
 *
 * Fits ds_t = c (+ d*t) + phi*s_{t-1} + sum_i psi_i ds_{t-i} + e_t with the
 * augmentation order chosen by BIC over 0..max_lags (evaluated on a common
 * sample, ties towards fewer lags), then refits the winner on its maximal
 * sample. The statistic is the t ratio of phi; the p-value comes from a
 * response-surface approximation of the Dickey-Fuller distribution.
 *
 * Requires length >= 15. An input that the deterministic terms alone fit
 * to numerical exactness (a constant, or an exact line under the trend
 * spec) is trivially stationary and short-circuits to statistic
 * -infinity, p-value 0.
 */
[[nodiscard]] AdfResult adf_test(const AnnualSeries& s,
                                 DeterministicSpec spec = DeterministicSpec::kConstant,
                                 std::size_t max_lags = 4);

/// Response-surface p-value for an ADF t statistic (exposed for testing).
[[nodiscard]] double adf_p_value(double statistic, DeterministicSpec spec);

}  // namespace goodwin
