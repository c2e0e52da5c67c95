#include "goodwin/regression.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "goodwin/distributions.hpp"

namespace goodwin {

namespace {

RegressionFit fit_design(const Eigen::MatrixXd& design, const Eigen::VectorXd& yv,
                         bool intercept, int start_year) {
    const auto n = design.rows();
    const auto k = design.cols();

    if (n <= k) {
        throw TooFewObservations("OLS needs n > k, got n=" + std::to_string(n) +
                                 " k=" + std::to_string(k));
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    // Rank threshold relative to the largest diagonal of R.
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        throw RankDeficient("design matrix is rank deficient (rank " +
                            std::to_string(qr.rank()) + " of " + std::to_string(k) + ")");
    }

    const Eigen::VectorXd beta = qr.solve(yv);
    const Eigen::VectorXd resid = yv - design * beta;

    RegressionFit fit;
    fit.residuals = AnnualSeries(
        start_year, std::vector<double>(resid.data(), resid.data() + n), "residuals");
    fit.nobs = static_cast<std::size_t>(n);
    fit.nparams = static_cast<std::size_t>(k);
    fit.has_intercept = intercept;
    fit.ssr = resid.squaredNorm();

    if (intercept) {
        const double ymean = yv.mean();
        fit.tss = (yv.array() - ymean).matrix().squaredNorm();
    } else {
        fit.tss = yv.squaredNorm();
    }

    const double df = static_cast<double>(n - k);
    const double sigma2 = fit.ssr / df;
    const Eigen::MatrixXd xtx_inv =
        (design.transpose() * design).ldlt().solve(Eigen::MatrixXd::Identity(k, k));

    fit.coefficients.assign(beta.data(), beta.data() + k);
    fit.std_errors.resize(k);
    fit.p_values.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        fit.std_errors[j] = std::sqrt(sigma2 * xtx_inv(j, j));
        const double t = fit.std_errors[j] > 0.0 ? beta(j) / fit.std_errors[j]
                                                 : std::numeric_limits<double>::infinity();
        fit.p_values[j] = dist::t_two_sided_p(t, df);
    }

    // Degenerate total variation: a constant regressand. Perfect fits get
    // R^2 = 1, anything else 0.
    const double tiny = 1e-14 * std::max(1.0, yv.squaredNorm());
    if (fit.tss <= tiny) {
        fit.r_squared = fit.ssr <= tiny ? 1.0 : 0.0;
        fit.adj_r_squared = fit.r_squared;
        fit.f_stat = std::numeric_limits<double>::quiet_NaN();
        fit.f_pvalue = std::numeric_limits<double>::quiet_NaN();
        return fit;
    }

    fit.r_squared = 1.0 - fit.ssr / fit.tss;
    const double slope_count = intercept ? static_cast<double>(k - 1) : static_cast<double>(k);
    if (intercept && k > 1) {
        fit.adj_r_squared =
            1.0 - (1.0 - fit.r_squared) * static_cast<double>(n - 1) / df;
        fit.f_stat = ((fit.tss - fit.ssr) / slope_count) / sigma2;
        fit.f_pvalue = dist::f_sf(fit.f_stat, slope_count, df);
    } else if (!intercept) {
        fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * static_cast<double>(n) / df;
        fit.f_stat = ((fit.tss - fit.ssr) / slope_count) / sigma2;
        fit.f_pvalue = dist::f_sf(fit.f_stat, slope_count, df);
    } else {
        // intercept-only model: no slopes to test
        fit.adj_r_squared = fit.r_squared;
        fit.f_stat = std::numeric_limits<double>::quiet_NaN();
        fit.f_pvalue = std::numeric_limits<double>::quiet_NaN();
    }
    return fit;
}

}  // namespace

RegressionFit ols(const std::vector<double>& y, const std::vector<std::vector<double>>& regressors,
                  bool intercept, int start_year) {
    const auto n = static_cast<Eigen::Index>(y.size());
    for (const auto& x : regressors) {
        if (static_cast<Eigen::Index>(x.size()) != n) {
            throw LengthMismatch("regressor length " + std::to_string(x.size()) +
                                 " does not match y length " + std::to_string(y.size()));
        }
    }
    const auto k = static_cast<Eigen::Index>(regressors.size()) + (intercept ? 1 : 0);
    Eigen::MatrixXd design(n, k);
    Eigen::Index col = 0;
    if (intercept) {
        design.col(col++).setOnes();
    }
    for (const auto& x : regressors) {
        design.col(col++) = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
    }
    const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
    return fit_design(design, yv, intercept, start_year);
}

RegressionFit ols(const AnnualSeries& y, const std::vector<AnnualSeries>& regressors,
                  bool intercept) {
    std::vector<std::vector<double>> xs;
    xs.reserve(regressors.size());
    for (const auto& r : regressors) {
        if (r.start_year() != y.start_year() || r.size() != y.size()) {
            throw LengthMismatch("regressor '" + r.label() + "' does not cover the years of '" +
                                 y.label() + "'; align the series first");
        }
        xs.emplace_back(r.values().begin(), r.values().end());
    }
    return ols(std::vector<double>(y.values().begin(), y.values().end()), xs, intercept,
               y.start_year());
}

LogTrendFit log_trend(const AnnualSeries& s) {
    if (s.size() < 3) {
        throw SeriesTooShort("log_trend needs at least 3 observations, got " +
                             std::to_string(s.size()));
    }
    const AnnualSeries logged = log_transform(s);
    std::vector<double> trend(s.size());
    for (std::size_t i = 0; i < trend.size(); ++i) {
        trend[i] = static_cast<double>(i);
    }
    RegressionFit fit = ols(std::vector<double>(logged.values().begin(), logged.values().end()),
                            {trend}, true, s.start_year());
    return LogTrendFit{.level0 = fit.coefficients[0], .growth = fit.coefficients[1],
                       .fit = std::move(fit)};
}

}  // namespace goodwin
