#include "goodwin/unit_root.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "goodwin/distributions.hpp"
#include "goodwin/regression.hpp"

namespace goodwin {

namespace {

// MacKinnon (1994) response-surface coefficients for the Dickey-Fuller t
// distribution, single-variable case. The fitted p-value is
// Phi(c0 + c1*tau + c2*tau^2 [+ c3*tau^3]), with a quadratic form in the
// lower tail (tau <= tau_star) and a cubic elsewhere; outside
// [tau_min, tau_max] the p-value saturates at 0 or 1.
struct ResponseSurface {
    double tau_star;
    double tau_min;
    double tau_max;
    double small_p[3];  // quadratic, lower tail
    double large_p[4];  // cubic, upper tail
};

constexpr ResponseSurface kSurfaceConstant{
    .tau_star = -1.61,
    .tau_min = -18.83,
    .tau_max = 2.74,
    .small_p = {2.1659, 1.4412, 3.8269e-2},
    .large_p = {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2},
};

constexpr ResponseSurface kSurfaceConstantTrend{
    .tau_star = -2.89,
    .tau_min = -16.18,
    .tau_max = 0.70,
    .small_p = {3.2512, 1.6047, 4.9588e-2},
    .large_p = {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2},
};

struct AdfRegression {
    double statistic = 0.0;
    double bic = 0.0;
};

// ADF regression with `lags` augmentation terms, estimated on observations
// t = first_t..n-1 of the level series (t indexes s_t, regressand ds_t).
AdfRegression adf_regression(std::span<const double> s, DeterministicSpec spec, std::size_t lags,
                             std::size_t first_t) {
    const std::size_t n = s.size();
    const std::size_t nobs = n - first_t;

    std::vector<double> y(nobs);
    std::vector<std::vector<double>> xs;
    std::vector<double> level(nobs), trend(nobs);
    for (std::size_t i = 0; i < nobs; ++i) {
        const std::size_t t = first_t + i;
        y[i] = s[t] - s[t - 1];
        level[i] = s[t - 1];
        trend[i] = static_cast<double>(i);
    }
    if (spec == DeterministicSpec::kConstantTrend) {
        xs.push_back(std::move(trend));
    }
    xs.push_back(std::move(level));
    const std::size_t level_idx = xs.size();  // position after the intercept column
    for (std::size_t j = 1; j <= lags; ++j) {
        std::vector<double> dl(nobs);
        for (std::size_t i = 0; i < nobs; ++i) {
            const std::size_t t = first_t + i;
            dl[i] = s[t - j] - s[t - j - 1];
        }
        xs.push_back(std::move(dl));
    }

    const RegressionFit fit = ols(y, xs, true);
    const double dn = static_cast<double>(nobs);
    const double k = static_cast<double>(fit.nparams);
    AdfRegression out;
    out.statistic = fit.coefficients[level_idx] / fit.std_errors[level_idx];
    out.bic = dn * std::log(std::max(fit.ssr / dn, 1e-300)) + k * std::log(dn);
    return out;
}

}  // namespace

double adf_p_value(double statistic, DeterministicSpec spec) {
    const ResponseSurface& rs =
        spec == DeterministicSpec::kConstant ? kSurfaceConstant : kSurfaceConstantTrend;
    if (statistic <= rs.tau_min) {
        return 0.0;
    }
    if (statistic >= rs.tau_max) {
        return 1.0;
    }
    double z;
    if (statistic <= rs.tau_star) {
        z = rs.small_p[0] + rs.small_p[1] * statistic + rs.small_p[2] * statistic * statistic;
    } else {
        z = rs.large_p[0] + rs.large_p[1] * statistic + rs.large_p[2] * statistic * statistic +
            rs.large_p[3] * statistic * statistic * statistic;
    }
    return dist::normal_cdf(z);
}

AdfResult adf_test(const AnnualSeries& s, DeterministicSpec spec, std::size_t max_lags) {
    if (s.size() < 15) {
        throw SeriesTooShort("adf_test needs at least 15 observations, got " +
                             std::to_string(s.size()));
    }
    const auto v = s.values();

    // A series that the deterministic terms alone fit to numerical
    // exactness (a constant, or an exact line under the trend spec)
    // deviates from its fitted mean path by nothing: report it as
    // stationary instead of fitting a degenerate regression.
    const SummaryStats moments = summarize(s);
    double residual_scale = moments.std;
    if (spec == DeterministicSpec::kConstantTrend) {
        double stt = 0.0, sty = 0.0;
        const double tbar = 0.5 * static_cast<double>(v.size() - 1);
        for (std::size_t t = 0; t < v.size(); ++t) {
            const double dt = static_cast<double>(t) - tbar;
            stt += dt * dt;
            sty += dt * (v[t] - moments.mean);
        }
        const double slope = sty / stt;
        double ssr = 0.0;
        for (std::size_t t = 0; t < v.size(); ++t) {
            const double e = v[t] - moments.mean - slope * (static_cast<double>(t) - tbar);
            ssr += e * e;
        }
        residual_scale = std::sqrt(ssr / static_cast<double>(v.size() - 1));
    }
    if (residual_scale <=
        1e-12 * std::max({1.0, std::fabs(moments.mean), std::fabs(moments.max)})) {
        return AdfResult{.statistic = -std::numeric_limits<double>::infinity(),
                         .p_value = 0.0,
                         .lags_used = 0,
                         .spec = spec};
    }

    // Lag order by BIC on the common sample t >= max_lags + 1.
    std::size_t best_lags = 0;
    double best_bic = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p <= max_lags; ++p) {
        const double bic = adf_regression(v, spec, p, max_lags + 1).bic;
        if (bic < best_bic - 1e-12) {
            best_bic = bic;
            best_lags = p;
        }
    }

    // Refit the winner on its own maximal sample.
    const AdfRegression reg = adf_regression(v, spec, best_lags, best_lags + 1);
    return AdfResult{.statistic = reg.statistic,
                     .p_value = adf_p_value(reg.statistic, spec),
                     .lags_used = best_lags,
                     .spec = spec};
}

}  // namespace goodwin
