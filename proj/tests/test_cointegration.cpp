#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "doctest.h"
#include "goodwin/annual_series.hpp"
#include "goodwin/cointegration.hpp"
#include "goodwin/errors.hpp"
#include "goodwin/random.hpp"
#include "support/oracles.hpp"
#include "support/reference_values.hpp"

using goodwin::AnnualSeries;
using goodwin::BoundsDecision;

namespace {

struct WagePair {
    AnnualSeries z;
    AnnualSeries lambda;
};

// Simulates the error-correction data-generating process
//   dz_t = c0 + c1*dlambda_{t-1} + c2*z_{t-1} + c3*lambda_{t-1} + eps_t
// with an exogenous stationary employment rate.
WagePair simulate_ecm(std::uint64_t seed, std::size_t n, double c0, double c1, double c2,
                      double c3, double noise_sd) {
    auto gen = goodwin::task_rng(seed, 21);
    std::normal_distribution<double> nd(0.0, 1.0);
    const std::size_t burn = 50;
    std::vector<double> lam(n + burn), z(n + burn);
    lam[0] = 0.93;
    z[0] = 0.02;
    lam[1] = 0.93;
    z[1] = 0.02;
    for (std::size_t t = 2; t < n + burn; ++t) {
        lam[t] = 0.93 + 0.8 * (lam[t - 1] - 0.93) + 0.01 * nd(gen);
        const double dlam1 = lam[t - 1] - lam[t - 2];
        z[t] = z[t - 1] + c0 + c1 * dlam1 + c2 * z[t - 1] + c3 * lam[t - 1] +
               noise_sd * nd(gen);
    }
    std::vector<double> zz(z.begin() + burn, z.end());
    std::vector<double> ll(lam.begin() + burn, lam.end());
    return {AnnualSeries(1900, zz, "z"), AnnualSeries(1900, ll, "lambda")};
}

}  // namespace

TEST_CASE("UECM with no extra lags has exactly the four base regressors") {
    auto d = simulate_ecm(1, 200, 0.1, 0.2, -0.8, 0.5, 0.002);
    auto fit = goodwin::fit_uecm(d.z, d.lambda, 4);
    CHECK(fit.p_chosen == 0);
    CHECK(fit.fit.coefficients.size() == 4);
    CHECK(fit.regressors.size() == 3);  // intercept excluded here
    for (double p : fit.ljung_box_p) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("UECM recovers the generating coefficients within three standard errors") {
    auto d = simulate_ecm(2, 500, 0.1, 0.2, -0.8, 0.5, 0.002);
    auto fit = goodwin::fit_uecm(d.z, d.lambda, 4);
    const double truth[4] = {0.1, 0.2, -0.8, 0.5};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::fabs(fit.fit.coefficients[i] - truth[i]) <= 3.0 * fit.fit.std_errors[i]);
    }
    CHECK(fit.fit.coefficients[goodwin::UecmFit::kLaggedLevelZ] < 0.0);
}

TEST_CASE("lagged employment is insignificant when the wage growth is unrelated") {
    const int reps = 200;
    int insignificant = 0;
    for (int r = 0; r < reps; ++r) {
        auto gen = goodwin::task_rng(300 + static_cast<std::uint64_t>(r), 22);
        std::normal_distribution<double> nd(0.0, 1.0);
        const std::size_t n = 80;
        std::vector<double> lam(n), z(n);
        double l = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            l = 0.8 * l + 0.01 * nd(gen);
            lam[t] = 0.93 + l;
            z[t] = 0.002 * nd(gen);
        }
        auto fit = goodwin::fit_uecm(AnnualSeries(1900, z), AnnualSeries(1900, lam), 2);
        if (fit.fit.p_values[goodwin::UecmFit::kLaggedLevelLambda] > 0.05) ++insignificant;
    }
    CHECK(insignificant >= reps * 9 / 10);
}

TEST_CASE("critical bound triples are ordered and have lower < upper") {
    const auto& b = goodwin::narayan_bounds_50();
    CHECK(b[0].level == doctest::Approx(0.01));
    CHECK(b[1].level == doctest::Approx(0.05));
    CHECK(b[2].level == doctest::Approx(0.10));
    CHECK(b[0].lower == doctest::Approx(7.560));
    CHECK(b[0].upper == doctest::Approx(8.685));
    CHECK(b[1].lower == doctest::Approx(5.220));
    CHECK(b[1].upper == doctest::Approx(6.070));
    CHECK(b[2].lower == doctest::Approx(4.190));
    CHECK(b[2].upper == doctest::Approx(4.940));
    for (const auto& row : b) CHECK(row.lower < row.upper);
}

TEST_CASE("decision rule boundaries") {
    CHECK(goodwin::bounds_decision(15.548) == BoundsDecision::kRejectAt1);
    CHECK(goodwin::bounds_decision(8.7) == BoundsDecision::kRejectAt1);
    CHECK(goodwin::bounds_decision(8.0) == BoundsDecision::kRejectAt5);
    CHECK(goodwin::bounds_decision(5.651) == BoundsDecision::kRejectAt10);
    CHECK(goodwin::bounds_decision(4.5) == BoundsDecision::kInconclusive);
    CHECK(goodwin::bounds_decision(1.0) == BoundsDecision::kFailToReject);
}

TEST_CASE("published F statistics map to the expected decision per country") {
    for (const auto& row : benchmark::kBoundsF) {
        const BoundsDecision d = goodwin::bounds_decision(row.f);
        const std::string country = row.country;
        if (country == "Germany") {
            CHECK(d == BoundsDecision::kRejectAt10);
        } else if (country == "Italy" || country == "US") {
            // These F values land inside the 1% inconclusive band and clear
            // the 5% upper bound.
            CHECK(d == BoundsDecision::kRejectAt5);
        } else {
            CHECK(d == BoundsDecision::kRejectAt1);
        }
        CHECK(d != BoundsDecision::kFailToReject);
        CHECK(d != BoundsDecision::kInconclusive);
    }
}

TEST_CASE("bounds_test F from SSRs equals the Wald form") {
    auto d = simulate_ecm(3, 120, 0.05, 0.1, -0.5, 0.3, 0.004);
    auto uecm = goodwin::fit_uecm(d.z, d.lambda, 4);
    auto bt = goodwin::bounds_test(uecm);

    // Wald statistic from the unrestricted fit:
    // W = (Rb)' [R s2 (X'X)^-1 R']^-1 (Rb) / 2, R selecting the two level terms.
    const std::size_t n = uecm.regressand.size();
    std::vector<std::vector<double>> cols;
    cols.emplace_back(n, 1.0);
    for (const auto& c : uecm.regressors) cols.push_back(c);
    const std::size_t k = cols.size();
    std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t t = 0; t < n; ++t) xtx[i][j] += cols[i][t] * cols[j][t];
    const auto inv = oracle::invert(xtx);
    const auto sol = oracle::ols(uecm.regressand, cols);
    const double s2 = sol.ssr / static_cast<double>(n - k);
    const std::size_t iz = goodwin::UecmFit::kLaggedLevelZ;
    const std::size_t il = goodwin::UecmFit::kLaggedLevelLambda;
    std::vector<std::vector<double>> v{{s2 * inv[iz][iz], s2 * inv[iz][il]},
                                       {s2 * inv[il][iz], s2 * inv[il][il]}};
    const auto vinv = oracle::invert(v);
    const double b2 = sol.coefficients[iz];
    const double b3 = sol.coefficients[il];
    const double wald =
        (b2 * (vinv[0][0] * b2 + vinv[0][1] * b3) + b3 * (vinv[1][0] * b2 + vinv[1][1] * b3)) /
        2.0;
    CHECK(bt.f_statistic == doctest::Approx(wald).epsilon(1e-8));
    CHECK(bt.bounds[0].upper == doctest::Approx(8.685));
}

TEST_CASE("bounds_test on a strongly error-correcting system rejects") {
    auto d = simulate_ecm(4, 200, 0.1, 0.2, -0.8, 0.5, 0.002);
    auto uecm = goodwin::fit_uecm(d.z, d.lambda, 4);
    auto bt = goodwin::bounds_test(uecm);
    CHECK(bt.f_statistic > 8.685);
    CHECK(bt.decision == BoundsDecision::kRejectAt1);
}

TEST_CASE("bounds_test rejects a fit without the level terms") {
    goodwin::UecmFit broken;
    broken.fit.coefficients = {0.1, 0.2};  // too short to contain the level terms
    CHECK_THROWS_AS(goodwin::bounds_test(broken), goodwin::WrongModelShape);
}

TEST_CASE("levels model recovers an exact line") {
    std::vector<double> lam, z;
    for (int t = 0; t < 40; ++t) {
        const double l = 0.9 + 0.002 * t;
        lam.push_back(l);
        z.push_back(-0.2 + 0.25 * l);
    }
    auto fit = goodwin::levels_model(AnnualSeries(1960, z), AnnualSeries(1960, lam));
    CHECK(fit.gamma() == doctest::Approx(-0.2).epsilon(1e-9));
    CHECK(fit.rho() == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(fit.fit.r_squared == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("levels model attaches a five-lag serial-correlation battery") {
    auto d = simulate_ecm(5, 100, 0.05, 0.1, -0.6, 0.35, 0.004);
    auto fit = goodwin::levels_model(d.z, d.lambda);
    for (double p : fit.ljung_box_p) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("restricted ECM finds a strong negative correction on a fast-adjusting system") {
    // z always sits on the long-run line plus independent noise, so the
    // lagged deviation is corrected one-for-one the next period.
    auto gen = goodwin::task_rng(6, 23);
    std::normal_distribution<double> nd(0.0, 1.0);
    const std::size_t n = 300;
    std::vector<double> lam(n), z(n);
    double l = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        l = 0.8 * l + 0.01 * nd(gen);
        lam[t] = 0.93 + l;
        z[t] = -0.2 + 0.25 * lam[t] + 0.003 * nd(gen);
    }
    AnnualSeries za(1900, z), la(1900, lam);
    auto levels = goodwin::levels_model(za, la);
    auto recm = goodwin::restricted_ecm(za, la, levels);
    CHECK(recm.fit.coefficients.size() == 3);
    CHECK(recm.correction_coefficient() ==
          doctest::Approx(-1.0).epsilon(0.15));
    CHECK(recm.correction_negative_significant);
    CHECK(recm.fit.p_values[goodwin::RecmFit::kCorrection] < 0.001);
}
