#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "doctest.h"
#include "goodwin/annual_series.hpp"
#include "goodwin/errors.hpp"
#include "goodwin/random.hpp"
#include "goodwin/regression.hpp"
#include "goodwin/stability.hpp"
#include "support/oracles.hpp"

using goodwin::StabilityLevel;

namespace {

struct XY {
    std::vector<double> y;
    std::vector<std::vector<double>> x;
};

XY stable_dgp(std::uint64_t seed, std::size_t n, double noise_sd = 0.2) {
    auto gen = goodwin::task_rng(seed, 31);
    std::normal_distribution<double> nd(0.0, 1.0);
    XY d;
    d.x.emplace_back();
    for (std::size_t t = 0; t < n; ++t) {
        const double x = nd(gen);
        d.x[0].push_back(x);
        d.y.push_back(1.0 + 0.5 * x + noise_sd * nd(gen));
    }
    return d;
}

}  // namespace

TEST_CASE("recursive residuals match the expanding-window oracle") {
    auto d = stable_dgp(1, 18);
    auto w = goodwin::recursive_residuals(d.y, d.x, true);
    const std::size_t k = 2;
    REQUIRE(w.size() == d.y.size() - k);
    for (std::size_t r = k; r < d.y.size(); ++r) {
        // Fit on the first r rows and predict row r (0-based index r).
        std::vector<double> ysub(d.y.begin(), d.y.begin() + static_cast<long>(r));
        std::vector<std::vector<double>> cols;
        cols.emplace_back(r, 1.0);
        cols.emplace_back(d.x[0].begin(), d.x[0].begin() + static_cast<long>(r));
        auto sol = oracle::ols(ysub, cols);
        std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t t = 0; t < r; ++t) xtx[i][j] += cols[i][t] * cols[j][t];
        auto inv = oracle::invert(xtx);
        const double xr[2] = {1.0, d.x[0][r]};
        double quad = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) quad += xr[i] * inv[i][j] * xr[j];
        const double pred = sol.coefficients[0] + sol.coefficients[1] * d.x[0][r];
        const double expect = (d.y[r] - pred) / std::sqrt(1.0 + quad);
        CHECK(w[r - k] == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("squared recursive residuals sum to the full-sample SSR") {
    auto d = stable_dgp(2, 40);
    auto w = goodwin::recursive_residuals(d.y, d.x, true);
    double sum_sq = 0.0;
    for (double v : w) sum_sq += v * v;
    auto fit = goodwin::ols(d.y, d.x, true);
    CHECK(sum_sq == doctest::Approx(fit.ssr).epsilon(1e-9));
}

TEST_CASE("guards: singular leading rows and too-few observations") {
    std::vector<double> y{1, 2, 3, 4, 5, 6};
    std::vector<std::vector<double>> dup{{1, 1, 1, 1, 1, 1}};
    CHECK_THROWS_AS(goodwin::recursive_residuals(y, dup, true), goodwin::RankDeficient);
    std::vector<double> y2{1, 2};
    std::vector<std::vector<double>> x2{{1, 2}};
    CHECK_THROWS_AS(goodwin::recursive_residuals(y2, x2, true), goodwin::TooFewObservations);
}

TEST_CASE("boundary constants for the cumulated-sum band") {
    CHECK(goodwin::cusum_boundary_factor(StabilityLevel::kFivePercent) == doctest::Approx(0.948));
    CHECK(goodwin::cusum_boundary_factor(StabilityLevel::kOnePercent) == doctest::Approx(1.143));
}

TEST_CASE("cumulated-squares band halfwidth is sane and shrinks with the sample") {
    const double c10 = goodwin::cusumsq_band_halfwidth(10, StabilityLevel::kFivePercent);
    const double c40 = goodwin::cusumsq_band_halfwidth(40, StabilityLevel::kFivePercent);
    const double c200 = goodwin::cusumsq_band_halfwidth(200, StabilityLevel::kFivePercent);
    CHECK(c10 > c40);
    CHECK(c40 > c200);
    for (double c : {c10, c40, c200}) {
        CHECK(c > 0.0);
        CHECK(c < 1.0);
    }
    // The 1% band is wider than the 5% band at the same sample size.
    CHECK(goodwin::cusumsq_band_halfwidth(40, StabilityLevel::kOnePercent) > c40);
}

TEST_CASE("stable relationship passes both tests") {
    auto d = stable_dgp(3, 50);
    auto res = goodwin::stability_tests(d.y, d.x, true, 1960, StabilityLevel::kOnePercent);
    CHECK(res.cusum.stable);
    CHECK(res.cusumsq.stable);
    CHECK(res.n_recursive == 48);
    CHECK(res.cusum.start_year == 1962);  // first point after the k startup rows
    CHECK(res.cusum.statistic.size() == res.n_recursive);
    CHECK(res.cusum.lower.size() == res.n_recursive);
    CHECK(res.cusumsq.statistic.size() == res.n_recursive);
    // The squares path is a nondecreasing share ending at one.
    CHECK(res.cusumsq.statistic.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a mid-sample slope jump trips at least one path") {
    auto gen = goodwin::task_rng(4, 32);
    std::normal_distribution<double> nd(0.0, 1.0);
    const std::size_t n = 60;
    std::vector<double> y;
    std::vector<std::vector<double>> x(1);
    for (std::size_t t = 0; t < n; ++t) {
        const double xv = nd(gen);
        const double slope = t < n / 2 ? 0.5 : 5.0;
        x[0].push_back(xv);
        y.push_back(1.0 + slope * xv + 0.2 * nd(gen));
    }
    auto res = goodwin::stability_tests(y, x, true, 0, StabilityLevel::kOnePercent);
    CHECK((!res.cusum.stable || !res.cusumsq.stable));
}

TEST_CASE("an exact fit yields flat, trivially stable paths") {
    std::vector<double> y;
    std::vector<std::vector<double>> x(1);
    for (int t = 0; t < 30; ++t) {
        x[0].push_back(static_cast<double>(t));
        y.push_back(2.0 + 3.0 * t);
    }
    auto w = goodwin::recursive_residuals(y, x, true);
    for (double v : w) CHECK(v == doctest::Approx(0.0).epsilon(1e-9));
    auto res = goodwin::stability_tests(y, x, true, 0, StabilityLevel::kOnePercent);
    CHECK(res.cusum.stable);
    CHECK(res.cusumsq.stable);
    for (double v : res.cusum.statistic) CHECK(v == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("annual-series overload carries the calendar start") {
    auto d = stable_dgp(5, 30);
    goodwin::AnnualSeries y(1970, d.y);
    goodwin::AnnualSeries x(1970, d.x[0]);
    auto res = goodwin::stability_tests(y, std::vector<goodwin::AnnualSeries>{x}, true,
                                        StabilityLevel::kOnePercent);
    CHECK(res.cusum.start_year == 1972);
    CHECK(res.n_recursive == 28);
}

TEST_CASE("false-alarm rate at the 99% band is small") {
    const int reps = 300;
    int cusum_alarm = 0;
    for (int r = 0; r < reps; ++r) {
        auto d = stable_dgp(500 + static_cast<std::uint64_t>(r), 50);
        auto res = goodwin::stability_tests(d.y, d.x, true, 0, StabilityLevel::kOnePercent);
        if (!res.cusum.stable) ++cusum_alarm;
    }
    CHECK(static_cast<double>(cusum_alarm) / reps <= 0.02);
}
