#include "goodwin/stability.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "goodwin/errors.hpp"

namespace goodwin {
namespace {

struct BandRow {
    double index;  // m/2 - 1
    double c95;
    double c99;
};

// Two-sided crossing values for the cumulated-squares path, simulated
// offline; regenerate with tools/gen_cusumsq_table.cpp.
constexpr BandRow kCusumsqTable[] = {
#include "stability_table.inc"
};

Eigen::MatrixXd design_matrix(const std::vector<double>& y,
                              const std::vector<std::vector<double>>& regressors,
                              bool intercept) {
    const std::size_t n = y.size();
    const std::size_t k = regressors.size() + (intercept ? 1 : 0);
    if (k == 0) throw WrongModelShape("stability: model has no parameters");
    for (const auto& col : regressors) {
        if (col.size() != n) {
            throw LengthMismatch("stability: regressor length does not match regressand");
        }
    }
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = 0;
        if (intercept) x(static_cast<Eigen::Index>(i), j++) = 1.0;
        for (const auto& col : regressors) {
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j++)) = col[i];
        }
    }
    return x;
}

}  // namespace

std::vector<double> recursive_residuals(const std::vector<double>& y,
                                        const std::vector<std::vector<double>>& regressors,
                                        bool intercept) {
    const Eigen::MatrixXd x = design_matrix(y, regressors, intercept);
    const auto n = static_cast<std::size_t>(x.rows());
    const auto k = static_cast<std::size_t>(x.cols());
    if (n <= k) throw TooFewObservations("stability: need more observations than parameters");

    Eigen::VectorXd yv(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) yv(static_cast<Eigen::Index>(i)) = y[i];

    const auto ki = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd xtx = x.topRows(ki).transpose() * x.topRows(ki);
    Eigen::VectorXd xty = x.topRows(ki).transpose() * yv.head(ki);
    {
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(xtx);
        if (!lu.isInvertible()) {
            throw RankDeficient("stability: first k rows of the design are singular");
        }
    }

    std::vector<double> w;
    w.reserve(n - k);
    for (auto r = ki; r < static_cast<Eigen::Index>(n); ++r) {
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(xtx);
        const Eigen::VectorXd beta = ldlt.solve(xty);
        const Eigen::VectorXd xr = x.row(r).transpose();
        const double denom = 1.0 + xr.dot(ldlt.solve(xr));
        w.push_back((yv(r) - xr.dot(beta)) / std::sqrt(denom));
        xtx += xr * xr.transpose();
        xty += xr * yv(r);
    }
    return w;
}

double cusum_boundary_factor(StabilityLevel level) {
    return level == StabilityLevel::kOnePercent ? 1.143 : 0.948;
}

double cusumsq_band_halfwidth(std::size_t m, StabilityLevel level) {
    if (m < 3) throw TooFewObservations("cusumsq band: need at least 3 recursive residuals");
    const double q = static_cast<double>(m) / 2.0 - 1.0;
    const auto pick = [level](const BandRow& row) {
        return level == StabilityLevel::kOnePercent ? row.c99 : row.c95;
    };
    constexpr std::size_t kRows = std::size(kCusumsqTable);
    if (q <= kCusumsqTable[0].index) return pick(kCusumsqTable[0]);
    if (q >= kCusumsqTable[kRows - 1].index) {
        // Beyond the table the crossing value shrinks like 1/sqrt(m).
        const BandRow& last = kCusumsqTable[kRows - 1];
        return pick(last) * std::sqrt(last.index / q);
    }
    std::size_t hi = 1;
    while (kCusumsqTable[hi].index < q) ++hi;
    const BandRow& a = kCusumsqTable[hi - 1];
    const BandRow& b = kCusumsqTable[hi];
    const double t = (q - a.index) / (b.index - a.index);
    return pick(a) + t * (pick(b) - pick(a));
}

StabilityTestResult stability_tests(const std::vector<double>& y,
                                    const std::vector<std::vector<double>>& regressors,
                                    bool intercept, int start_year, StabilityLevel level) {
    const std::vector<double> w = recursive_residuals(y, regressors, intercept);
    const std::size_t m = w.size();
    if (m < 3) throw TooFewObservations("stability: need at least 3 recursive residuals");
    const std::size_t k = regressors.size() + (intercept ? 1 : 0);

    StabilityTestResult out;
    out.n_recursive = m;
    out.level = level;
    const int first_year = start_year + static_cast<int>(k);
    out.cusum.start_year = first_year;
    out.cusumsq.start_year = first_year;

    double mean = 0.0;
    for (double v : w) mean += v;
    mean /= static_cast<double>(m);
    double ss = 0.0;
    for (double v : w) ss += (v - mean) * (v - mean);
    double sigma = std::sqrt(ss / static_cast<double>(m - 1));
    // Degenerate spread: fall back to the scale of the residuals themselves
    // so a constant nonzero sequence still registers as drifting.
    if (sigma == 0.0) sigma = std::fabs(mean);

    const double a = cusum_boundary_factor(level);
    const double root_m = std::sqrt(static_cast<double>(m));
    const double c0 = cusumsq_band_halfwidth(m, level);

    double cum = 0.0;
    double cum_sq = 0.0;
    double total_sq = 0.0;
    for (double v : w) total_sq += v * v;
    // An exact fit leaves only rounding dust in the residuals; normalizing
    // the paths by their own spread would amplify that dust into an
    // arbitrary walk, so such fits get flat, trivially stable paths.
    double y_scale = 1.0;
    for (double v : y) y_scale = std::max(y_scale, std::fabs(v));
    const bool all_zero =
        std::sqrt(total_sq / static_cast<double>(m)) <= 1e-10 * y_scale;

    out.cusum.stable = true;
    out.cusumsq.stable = true;
    for (std::size_t j = 1; j <= m; ++j) {
        cum += w[j - 1];
        cum_sq += w[j - 1] * w[j - 1];

        const double path = all_zero ? 0.0 : cum / sigma;
        const double bound = a * (root_m + 2.0 * static_cast<double>(j) / root_m);
        out.cusum.statistic.push_back(path);
        out.cusum.lower.push_back(-bound);
        out.cusum.upper.push_back(bound);
        if (std::fabs(path) > bound) out.cusum.stable = false;

        const double center = static_cast<double>(j) / static_cast<double>(m);
        const double s = all_zero ? center : cum_sq / total_sq;
        out.cusumsq.statistic.push_back(s);
        out.cusumsq.lower.push_back(center - c0);
        out.cusumsq.upper.push_back(center + c0);
        if (std::fabs(s - center) > c0) out.cusumsq.stable = false;
    }
    return out;
}

StabilityTestResult stability_tests(const AnnualSeries& y,
                                    const std::vector<AnnualSeries>& regressors,
                                    bool intercept, StabilityLevel level) {
    std::vector<std::vector<double>> cols;
    cols.reserve(regressors.size());
    for (const auto& s : regressors) {
        if (s.start_year() != y.start_year() || s.size() != y.size()) {
            throw LengthMismatch("stability: regressor years must match the regressand");
        }
        cols.emplace_back(s.values().begin(), s.values().end());
    }
    const std::vector<double> yv(y.values().begin(), y.values().end());
    return stability_tests(yv, cols, intercept, y.start_year(), level);
}

}  // namespace goodwin
