#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "goodwin/annual_series.hpp"
#include "goodwin/diagnostics.hpp"
#include "goodwin/regression.hpp"

namespace goodwin {

/**
 * Unrestricted error-correction model for real wage growth z_t and the
 * employment rate lambda_t:
 *
 *   dz_t = c + b1*dlambda_{t-1} + b2*z_{t-1} + b3*lambda_{t-1}
 *          + sum_{i=1..p} a_i*dz_{t-i} + e_t
 *
 * The lag order p is chosen by BIC. Column order in the fit is
 * [intercept, dlambda_{t-1}, z_{t-1}, lambda_{t-1}, dz lags...].
 */
struct UecmFit {
    RegressionFit fit;
    std::size_t p_chosen = 0;
    std::array<double, 5> ljung_box_p{};  // residual serial-correlation battery

    // Estimation data kept for the restricted fit behind the bounds test.
    std::vector<double> regressand;
    std::vector<std::vector<double>> regressors;  // without the intercept column
    int sample_start_year = 0;

    static constexpr std::size_t kLaggedLevelZ = 2;       // b2 position in coefficients
    static constexpr std::size_t kLaggedLevelLambda = 3;  // b3 position in coefficients
};

[[nodiscard]] UecmFit fit_uecm(const AnnualSeries& z, const AnnualSeries& lambda,
                               std::size_t max_lag_p = 4);

enum class BoundsDecision {
    kRejectAt1,
    kRejectAt5,
    kRejectAt10,
    kInconclusive,
    kFailToReject,
};

[[nodiscard]] const char* to_string(BoundsDecision d);

struct BoundsRow {
    double level;  // significance level, e.g. 0.01
    double lower;  // all-I(0) critical value
    double upper;  // all-I(1) critical value
};

struct BoundsTestResult {
    double f_statistic = 0.0;
    std::array<BoundsRow, 3> bounds{};  // ordered 1%, 5%, 10%
    BoundsDecision decision = BoundsDecision::kInconclusive;
};

/// Narayan small-sample critical bounds for 50 observations,
/// unrestricted intercept and no trend, one regressor.
[[nodiscard]] const std::array<BoundsRow, 3>& narayan_bounds_50();

/// Decision rule for an F statistic against the bound pairs: above an
/// upper bound rejects at that level, below every lower bound fails to
/// reject, anything else is inconclusive.
[[nodiscard]] BoundsDecision bounds_decision(double f_statistic);

/**
 * Cointegration bounds test: F test of the joint restriction that both
 * lagged-level coefficients in the UECM are zero, compared against the
 * Narayan bounds. Throws WrongModelShape if the fit lacks the level terms.
 */
[[nodiscard]] BoundsTestResult bounds_test(const UecmFit& uecm);

/// Long-run levels model z_t = gamma + rho*lambda_t + e_t.
struct LevelsFit {
    RegressionFit fit;
    std::array<double, 5> ljung_box_p{};

    [[nodiscard]] double gamma() const { return fit.coefficients[0]; }
    [[nodiscard]] double rho() const { return fit.coefficients[1]; }
};

[[nodiscard]] LevelsFit levels_model(const AnnualSeries& z, const AnnualSeries& lambda);

/**
 * Restricted error-correction model
 *   dz_t = c + b1*dlambda_{t-1} + b2*v_{t-1} + e_t
 * with v the residual from the levels model. The correction coefficient
 * b2 sits at position 2; a correct long-run relation shows up as b2
 * negative and significant.
 */
struct RecmFit {
    RegressionFit fit;
    bool correction_negative_significant = false;
    DiagnosticsReport diagnostics;

    static constexpr std::size_t kCorrection = 2;

    [[nodiscard]] double correction_coefficient() const { return fit.coefficients[kCorrection]; }
};

[[nodiscard]] RecmFit restricted_ecm(const AnnualSeries& z, const AnnualSeries& lambda,
                                     const LevelsFit& levels);

}  // namespace goodwin
