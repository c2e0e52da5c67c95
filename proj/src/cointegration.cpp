#include "goodwin/cointegration.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "goodwin/errors.hpp"

namespace goodwin {
namespace {

struct UecmDesign {
    std::vector<double> y;
    std::vector<std::vector<double>> cols;  // dlambda_{t-1}, z_{t-1}, lambda_{t-1}, dz lags
};

// Rows t = first..M-1 over the aligned arrays; needs first >= max(2, p+1).
UecmDesign build_uecm_design(std::span<const double> zv, std::span<const double> lv,
                             std::size_t p, std::size_t first) {
    UecmDesign d;
    const std::size_t m = zv.size();
    d.cols.resize(3 + p);
    for (std::size_t t = first; t < m; ++t) {
        d.y.push_back(zv[t] - zv[t - 1]);
        d.cols[0].push_back(lv[t - 1] - lv[t - 2]);
        d.cols[1].push_back(zv[t - 1]);
        d.cols[2].push_back(lv[t - 1]);
        for (std::size_t i = 1; i <= p; ++i) {
            d.cols[2 + i].push_back(zv[t - i] - zv[t - i - 1]);
        }
    }
    return d;
}

std::array<double, 5> lb_battery(const AnnualSeries& residuals) {
    std::array<double, 5> out{};
    for (std::size_t m = 1; m <= 5; ++m) {
        try {
            out[m - 1] = ljung_box(residuals.values(), m);
        } catch (const SeriesTooShort&) {
            out[m - 1] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return out;
}

double bic_of(const RegressionFit& fit) {
    const auto n = static_cast<double>(fit.nobs);
    const auto k = static_cast<double>(fit.nparams);
    return n * std::log(fit.ssr / n) + k * std::log(n);
}

}  // namespace

UecmFit fit_uecm(const AnnualSeries& z, const AnnualSeries& lambda, std::size_t max_lag_p) {
    const auto [za, la] = align(z, lambda);
    const auto zv = za.values();
    const auto lv = la.values();
    const std::size_t m = zv.size();

    // Lag selection on the sample every candidate can use.
    const std::size_t first_common = std::max<std::size_t>(2, max_lag_p + 1);
    if (m <= first_common + 4) {
        throw TooFewObservations("uecm: sample too short for lag selection up to p=" +
                                 std::to_string(max_lag_p));
    }
    std::size_t best_p = 0;
    double best_bic = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p <= max_lag_p; ++p) {
        UecmDesign d = build_uecm_design(zv, lv, p, first_common);
        RegressionFit f = ols(d.y, d.cols, /*intercept=*/true);
        const double bic = bic_of(f);
        if (bic < best_bic - 1e-12) {
            best_bic = bic;
            best_p = p;
        }
    }

    // Refit the winner on the longest sample its own lags allow.
    const std::size_t first = std::max<std::size_t>(2, best_p + 1);
    UecmDesign d = build_uecm_design(zv, lv, best_p, first);
    const int start_year = za.start_year() + static_cast<int>(first);

    UecmFit out;
    out.fit = ols(d.y, d.cols, /*intercept=*/true, start_year);
    out.p_chosen = best_p;
    out.ljung_box_p = lb_battery(out.fit.residuals);
    out.regressand = std::move(d.y);
    out.regressors = std::move(d.cols);
    out.sample_start_year = start_year;
    return out;
}

const char* to_string(BoundsDecision d) {
    switch (d) {
        case BoundsDecision::kRejectAt1: return "cointegration (1%)";
        case BoundsDecision::kRejectAt5: return "cointegration (5%)";
        case BoundsDecision::kRejectAt10: return "cointegration (10%)";
        case BoundsDecision::kInconclusive: return "inconclusive";
        case BoundsDecision::kFailToReject: return "no cointegration";
    }
    return "?";
}

const std::array<BoundsRow, 3>& narayan_bounds_50() {
    static const std::array<BoundsRow, 3> kBounds{{
        {0.01, 7.560, 8.685},
        {0.05, 5.220, 6.070},
        {0.10, 4.190, 4.940},
    }};
    return kBounds;
}

BoundsDecision bounds_decision(double f_statistic) {
    const auto& b = narayan_bounds_50();
    if (f_statistic > b[0].upper) return BoundsDecision::kRejectAt1;
    if (f_statistic > b[1].upper) return BoundsDecision::kRejectAt5;
    if (f_statistic > b[2].upper) return BoundsDecision::kRejectAt10;
    if (f_statistic < b[2].lower && f_statistic < b[1].lower && f_statistic < b[0].lower) {
        return BoundsDecision::kFailToReject;
    }
    return BoundsDecision::kInconclusive;
}

BoundsTestResult bounds_test(const UecmFit& uecm) {
    if (!uecm.fit.has_intercept || uecm.regressors.size() < 3 ||
        uecm.fit.coefficients.size() != uecm.regressors.size() + 1) {
        throw WrongModelShape("bounds_test: fit does not carry the two lagged level terms");
    }
    const double ssr_u = uecm.fit.ssr;
    const auto n = static_cast<double>(uecm.fit.nobs);
    const auto k_u = static_cast<double>(uecm.fit.nparams);

    // Restricted model: both lagged levels removed.
    std::vector<std::vector<double>> restricted;
    restricted.push_back(uecm.regressors[0]);
    for (std::size_t j = 3; j < uecm.regressors.size(); ++j) {
        restricted.push_back(uecm.regressors[j]);
    }
    const RegressionFit r = ols(uecm.regressand, restricted, /*intercept=*/true,
                                uecm.sample_start_year);

    BoundsTestResult out;
    out.f_statistic = ((r.ssr - ssr_u) / 2.0) / (ssr_u / (n - k_u));
    out.bounds = narayan_bounds_50();
    out.decision = bounds_decision(out.f_statistic);
    return out;
}

LevelsFit levels_model(const AnnualSeries& z, const AnnualSeries& lambda) {
    const auto [za, la] = align(z, lambda);
    LevelsFit out;
    out.fit = ols(za, {la});
    out.ljung_box_p = lb_battery(out.fit.residuals);
    return out;
}

RecmFit restricted_ecm(const AnnualSeries& z, const AnnualSeries& lambda,
                       const LevelsFit& levels) {
    const auto [za, la] = align(z, lambda);
    const auto zv = za.values();
    const auto lv = la.values();
    const std::size_t m = zv.size();
    if (m < 6) {
        throw TooFewObservations("restricted_ecm: need at least 6 aligned observations");
    }
    const double g = levels.gamma();
    const double r = levels.rho();

    std::vector<double> y;
    std::vector<std::vector<double>> cols(2);
    for (std::size_t t = 2; t < m; ++t) {
        y.push_back(zv[t] - zv[t - 1]);
        cols[0].push_back(lv[t - 1] - lv[t - 2]);
        cols[1].push_back(zv[t - 1] - g - r * lv[t - 1]);
    }
    const int start_year = za.start_year() + 2;

    RecmFit out;
    out.fit = ols(y, cols, /*intercept=*/true, start_year);
    out.correction_negative_significant =
        out.fit.coefficients[RecmFit::kCorrection] < 0.0 &&
        out.fit.p_values[RecmFit::kCorrection] < 0.05;
    out.diagnostics = run_diagnostics(out.fit.residuals.values());
    return out;
}

}  // namespace goodwin
