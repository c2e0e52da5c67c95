#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace goodwin {

/// Sample autocorrelations at lags 1..max_lag (mean-centered, denominator
/// is the lag-0 sum of squares). A zero-variance input yields all zeros.
[[nodiscard]] std::vector<double> autocorrelations(std::span<const double> x, std::size_t max_lag);

/**
 * Ljung-Box Q test for no serial correlation up to lag m.
 *
 * Q = n(n+2) sum_{k<=m} acf_k^2/(n-k), p-value from chi-square(m).
 * Throws SeriesTooShort if n <= m + 1.
 */
[[nodiscard]] double ljung_box(std::span<const double> residuals, std::size_t m);

struct TestStat {
    double statistic = 0.0;
    double p_value = 1.0;
};

/**
 * Jarque-Bera normality test: JB = n/6 (S^2 + (K-3)^2/4) with population
 * skewness S and kurtosis K; p-value from chi-square(2). Needs n >= 8.
 */
[[nodiscard]] TestStat jarque_bera(std::span<const double> residuals);

/**
 * Engle's ARCH LM test: squared residuals regressed on their own first
 * `lags` lags plus an intercept; statistic is (aux sample size) * R^2,
 * p-value from chi-square(lags). Constant squared residuals give (0, 1).
 */
[[nodiscard]] TestStat arch_lm(std::span<const double> residuals, std::size_t lags);

/// The residual battery attached to the study's regression tables.
struct DiagnosticsReport {
    std::array<double, 5> ljung_box_p{};  // lags 1..5
    TestStat jarque_bera;
    TestStat arch_lm;                     // one lag
    std::vector<std::string> violations;  // flags at the 5% level
};

[[nodiscard]] DiagnosticsReport run_diagnostics(std::span<const double> residuals);

}  // namespace goodwin
