#include "goodwin/diagnostics.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "goodwin/distributions.hpp"
#include "goodwin/errors.hpp"
#include "goodwin/regression.hpp"

namespace goodwin {

namespace {

double mean_of(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

}  // namespace

std::vector<double> autocorrelations(std::span<const double> x, std::size_t max_lag) {
    const std::size_t n = x.size();
    const double m = mean_of(x);
    double denom = 0.0;
    for (double v : x) {
        denom += (v - m) * (v - m);
    }
    std::vector<double> acf(max_lag, 0.0);
    if (denom <= 0.0) {
        return acf;  // constant input
    }
    for (std::size_t k = 1; k <= max_lag && k < n; ++k) {
        double num = 0.0;
        for (std::size_t t = k; t < n; ++t) {
            num += (x[t] - m) * (x[t - k] - m);
        }
        acf[k - 1] = num / denom;
    }
    return acf;
}

double ljung_box(std::span<const double> residuals, std::size_t m) {
    const std::size_t n = residuals.size();
    if (m < 1 || n <= m + 1) {
        throw SeriesTooShort("ljung_box with lag " + std::to_string(m) + " needs more than " +
                             std::to_string(m + 1) + " observations, got " + std::to_string(n));
    }
    const auto acf = autocorrelations(residuals, m);
    double q = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
        q += acf[k - 1] * acf[k - 1] / static_cast<double>(n - k);
    }
    q *= static_cast<double>(n) * static_cast<double>(n + 2);
    return dist::chi_squared_sf(q, static_cast<double>(m));
}

TestStat jarque_bera(std::span<const double> residuals) {
    const std::size_t n = residuals.size();
    if (n < 8) {
        throw SeriesTooShort("jarque_bera needs at least 8 observations, got " +
                             std::to_string(n));
    }
    const double m = mean_of(residuals);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : residuals) {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    const double dn = static_cast<double>(n);
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    if (m2 <= 0.0) {
        return {0.0, 1.0};  // constant residuals carry no shape information
    }
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2);
    const double jb = dn / 6.0 * (skew * skew + 0.25 * (kurt - 3.0) * (kurt - 3.0));
    return {jb, dist::chi_squared_sf(jb, 2.0)};
}

TestStat arch_lm(std::span<const double> residuals, std::size_t lags) {
    const std::size_t n = residuals.size();
    if (lags < 1 || n <= lags + 2) {
        throw SeriesTooShort("arch_lm with " + std::to_string(lags) +
                             " lags needs more than " + std::to_string(lags + 2) +
                             " observations, got " + std::to_string(n));
    }
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        sq[i] = residuals[i] * residuals[i];
    }
    // No variation in the squared residuals: nothing to explain.
    const double sq_mean = mean_of(sq);
    double sq_var = 0.0;
    for (double v : sq) {
        sq_var += (v - sq_mean) * (v - sq_mean);
    }
    if (sq_var <= 1e-14 * std::max(1.0, sq_mean * sq_mean) * static_cast<double>(n)) {
        return {0.0, 1.0};
    }

    const std::size_t aux_n = n - lags;
    std::vector<double> y(sq.begin() + static_cast<std::ptrdiff_t>(lags), sq.end());
    std::vector<std::vector<double>> xs(lags);
    for (std::size_t j = 1; j <= lags; ++j) {
        xs[j - 1].assign(sq.begin() + static_cast<std::ptrdiff_t>(lags - j),
                         sq.begin() + static_cast<std::ptrdiff_t>(lags - j + aux_n));
    }
    const RegressionFit fit = ols(y, xs, true);
    const double stat = static_cast<double>(aux_n) * fit.r_squared;
    return {stat, dist::chi_squared_sf(stat, static_cast<double>(lags))};
}

DiagnosticsReport run_diagnostics(std::span<const double> residuals) {
    DiagnosticsReport rep;
    for (std::size_t m = 1; m <= 5; ++m) {
        rep.ljung_box_p[m - 1] = ljung_box(residuals, m);
        if (rep.ljung_box_p[m - 1] < 0.05) {
            rep.violations.push_back("serial correlation at lag " + std::to_string(m));
        }
    }
    rep.jarque_bera = jarque_bera(residuals);
    if (rep.jarque_bera.p_value < 0.05) {
        rep.violations.emplace_back("non-normal residuals");
    }
    rep.arch_lm = arch_lm(residuals, 1);
    if (rep.arch_lm.p_value < 0.05) {
        rep.violations.emplace_back("conditional heteroskedasticity");
    }
    return rep;
}

}  // namespace goodwin
