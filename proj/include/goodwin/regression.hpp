#pragma once

#include <string>
#include <vector>

#include "goodwin/annual_series.hpp"

namespace goodwin {

/**
 * Result of an ordinary least squares fit.
 *
 * Standard errors are classical (homoskedastic); p-values are two-sided t
 * with n - k degrees of freedom. The overall F statistic tests all
 * non-intercept coefficients against the intercept-only model.
 */
struct RegressionFit {
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> p_values;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double f_stat = 0.0;
    double f_pvalue = 1.0;
    AnnualSeries residuals;
    std::size_t nobs = 0;
    std::size_t nparams = 0;
    double ssr = 0.0;  // residual sum of squares
    double tss = 0.0;  // total sum of squares (centered when intercept present)
    bool has_intercept = true;

    [[nodiscard]] std::size_t df_resid() const { return nobs - nparams; }
    [[nodiscard]] double sigma2() const { return ssr / static_cast<double>(df_resid()); }
};

/**
 * OLS of y on the given regressors, optionally prepending an intercept
 * column. All series must cover y's year range exactly (align first).
 *
 * Throws TooFewObservations if n <= k, RankDeficient if the design matrix
 * does not have full column rank, LengthMismatch on ragged inputs.
 */
[[nodiscard]] RegressionFit ols(const AnnualSeries& y,
                                const std::vector<AnnualSeries>& regressors,
                                bool intercept = true);

/// Plain-vector variant used where no calendar years are attached; the
/// residual series is indexed from `start_year`.
[[nodiscard]] RegressionFit ols(const std::vector<double>& y,
                                const std::vector<std::vector<double>>& regressors,
                                bool intercept = true, int start_year = 0);

struct LogTrendFit {
    double level0 = 0.0;  // intercept: log of the initial level
    double growth = 0.0;  // slope: continuous annual growth rate
    RegressionFit fit;
};

/**
 * Exponential-trend estimate: OLS of ln(s_t) on an intercept and
 * t = 0, 1, 2, ... Slope is the continuous growth rate.
 *
 * Requires a strictly positive series of length >= 3.
 */
[[nodiscard]] LogTrendFit log_trend(const AnnualSeries& s);

}  // namespace goodwin
