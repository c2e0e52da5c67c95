#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "doctest.h"
#include "goodwin/annual_series.hpp"
#include "goodwin/errors.hpp"
#include "goodwin/evaluation.hpp"
#include "goodwin/random.hpp"
#include "support/oracles.hpp"
#include "support/param_sampler.hpp"
#include "support/reference_values.hpp"

using goodwin::AnnualSeries;

TEST_CASE("equilibrium errors follow the column definitions") {
    // Canada: employment-rate mean 0.9264 vs equilibrium 0.9371.
    auto e = goodwin::equilibrium_errors(0.6724, 0.9264, 0.6424, 0.9371);
    CHECK(e.abs_err_lambda == doctest::Approx(0.0107).epsilon(1e-10));
    CHECK(e.rel_err_lambda * 100.0 == doctest::Approx(1.15).epsilon(5e-3));
    // UK: wage-share mean 0.7147 vs equilibrium 0.6731.
    auto u = goodwin::equilibrium_errors(0.7147, 0.9438, 0.6731, 0.9515);
    CHECK(u.abs_err_omega == doctest::Approx(0.0416).epsilon(1e-10));
    CHECK(u.rel_err_omega * 100.0 == doctest::Approx(5.83).epsilon(2e-3));
}

TEST_CASE("matching estimates give zero errors; bad means are rejected") {
    auto e = goodwin::equilibrium_errors(0.68, 0.95, 0.68, 0.95);
    CHECK(e.abs_err_omega == 0.0);
    CHECK(e.rel_err_omega == 0.0);
    CHECK(e.abs_err_lambda == 0.0);
    CHECK(e.rel_err_lambda == 0.0);
    CHECK_THROWS_AS(goodwin::equilibrium_errors(0.0, 0.95, 0.68, 0.95),
                    goodwin::DivisionDomain);
    CHECK_THROWS_AS(goodwin::equilibrium_errors(0.68, -0.95, 0.68, 0.95),
                    goodwin::DivisionDomain);
}

TEST_CASE("benchmark moments and equilibria reproduce the published error rows") {
    for (std::size_t i = 0; i < benchmark::kMoments.size(); ++i) {
        const auto& m = benchmark::kMoments[i];
        const auto& p = benchmark::kParameters[i];
        const auto& row = benchmark::kEquilibriumErrors[i];
        auto e = goodwin::equilibrium_errors(m.mean_omega, m.mean_lambda, p.omega_g,
                                             p.lambda_g);
        CHECK(std::fabs(e.abs_err_lambda - row.abs_lambda) < 1e-3);
        CHECK(std::fabs(e.rel_err_lambda * 100.0 - row.rel_lambda_pct) < 0.1);
        CHECK(std::fabs(e.abs_err_omega - row.abs_omega) < 1e-3);
        CHECK(std::fabs(e.rel_err_omega * 100.0 - row.rel_omega_pct) < 0.1);
    }
}

TEST_CASE("a pure level shift is all bias, exactly") {
    // Values with population standard deviation exactly 1 and a dyadic
    // shift keep every intermediate step exact in floating point.
    std::vector<double> obs, sim;
    for (int i = 0; i < 10; ++i) {
        const double v = (i % 2 == 0) ? 1.0 : 3.0;
        obs.push_back(v);
        sim.push_back(v + 0.5);
    }
    auto t = goodwin::theil_decompose(AnnualSeries(1960, obs), AnnualSeries(1960, sim));
    CHECK(t.u_bias == 1.0);
    CHECK(t.u_variance == 0.0);
    CHECK(t.u_covariance == 0.0);
    CHECK(t.mse == 0.25);
}

TEST_CASE("a constant simulation at the observed mean is all variance") {
    std::vector<double> obs{1.0, 3.0, 1.0, 3.0, 1.0, 3.0};
    std::vector<double> sim(obs.size(), 2.0);
    auto t = goodwin::theil_decompose(AnnualSeries(1960, obs), AnnualSeries(1960, sim));
    CHECK(t.u_bias == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(t.u_variance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.u_covariance == 0.0);
}

TEST_CASE("shares sum to one and match the raw-moment oracle") {
    auto gen = goodwin::task_rng(41, 1);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> obs, sim;
        for (int i = 0; i < 10; ++i) {
            obs.push_back(5.0 + nd(gen));
            sim.push_back(5.2 + 0.8 * nd(gen));
        }
        auto t = goodwin::theil_decompose(AnnualSeries(1960, obs), AnnualSeries(1960, sim));
        CHECK(t.u_bias + t.u_variance + t.u_covariance == doctest::Approx(1.0).epsilon(1e-10));
        auto ref = oracle::theil(obs, sim);
        CHECK(t.mse == doctest::Approx(ref.mse).epsilon(1e-12));
        CHECK(t.u_bias == doctest::Approx(ref.bias_term / ref.mse).epsilon(1e-12));
        CHECK(t.u_variance == doctest::Approx(ref.variance_term / ref.mse).epsilon(1e-12));
        CHECK(t.u_covariance ==
              doctest::Approx(ref.covariance_term / ref.mse).epsilon(1e-12));
        CHECK(t.u_bias >= 0.0);
        CHECK(t.u_variance >= 0.0);
        CHECK(t.u_covariance >= 0.0);
    }
}

TEST_CASE("proportions are invariant under common rescaling") {
    std::vector<double> obs{1.0, 1.4, 0.9, 1.2, 1.1, 0.8};
    std::vector<double> sim{1.1, 1.3, 1.0, 1.05, 1.2, 0.9};
    auto a = goodwin::theil_decompose(AnnualSeries(1960, obs), AnnualSeries(1960, sim));
    std::vector<double> obs3(obs), sim3(sim);
    for (auto& v : obs3) v *= 3.0;
    for (auto& v : sim3) v *= 3.0;
    auto b = goodwin::theil_decompose(AnnualSeries(1960, obs3), AnnualSeries(1960, sim3));
    CHECK(a.u_bias == doctest::Approx(b.u_bias).epsilon(1e-12));
    CHECK(a.u_variance == doctest::Approx(b.u_variance).epsilon(1e-12));
    CHECK(a.u_covariance == doctest::Approx(b.u_covariance).epsilon(1e-12));
    CHECK(a.rmse_over_mean == doctest::Approx(b.rmse_over_mean).epsilon(1e-12));
}

TEST_CASE("rmse is symmetric but rmse_over_mean is normalized by the first series") {
    std::vector<double> obs{1.0, 1.4, 0.9, 1.2};
    std::vector<double> sim{2.1, 2.3, 2.0, 2.05};
    auto a = goodwin::theil_decompose(AnnualSeries(1960, obs), AnnualSeries(1960, sim));
    auto b = goodwin::theil_decompose(AnnualSeries(1960, sim), AnnualSeries(1960, obs));
    CHECK(a.rmse == doctest::Approx(b.rmse).epsilon(1e-12));
    CHECK(a.rmse_over_mean != doctest::Approx(b.rmse_over_mean).epsilon(1e-6));
}

TEST_CASE("identical series raise ZeroMse; disjoint years raise NoOverlap") {
    AnnualSeries s(1960, {1.0, 2.0, 3.0});
    CHECK_THROWS_AS(goodwin::theil_decompose(s, s), goodwin::ZeroMse);
    AnnualSeries t(1990, {1.0, 2.0, 3.0});
    CHECK_THROWS_AS(goodwin::theil_decompose(s, t), goodwin::NoOverlap);
}

TEST_CASE("observations sampled from an orbit are recovered almost exactly") {
    auto d = sampler::interior_draw(42, 3, 0.05);
    auto [om, la] = goodwin::simulate_window(d.params, d.start, 1970, 1960, 1990);
    auto best = goodwin::best_orbit(d.params, om, la);
    CHECK(best.skipped_years.empty());
    CHECK(best.omega.joint_mse < 1e-10);
    CHECK(best.omega.anchor_year == best.lambda.anchor_year);  // joint mode: one orbit
    // The winning anchor lies on the level set of the generating orbit.
    const double v_true = goodwin::conserved_quantity(d.params, d.start);
    const double v_win = goodwin::conserved_quantity(d.params, best.omega.anchor);
    CHECK(std::fabs(v_win - v_true) / std::fabs(v_true) < 1e-8);
}

TEST_CASE("the reported joint MSE is the mean of the two member MSEs") {
    auto d = sampler::interior_draw(42, 4, 0.05);
    auto [om, la] = goodwin::simulate_window(d.params, d.start, 1970, 1960, 1985);
    // Perturb so no candidate is exact.
    std::vector<double> ov(om.values().begin(), om.values().end());
    std::vector<double> lv(la.values().begin(), la.values().end());
    auto gen = goodwin::task_rng(42, 5);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (auto& v : ov) v += 0.004 * nd(gen);
    for (auto& v : lv) v += 0.004 * nd(gen);
    AnnualSeries omn(1960, ov), lan(1960, lv);
    auto best = goodwin::best_orbit(d.params, omn, lan);
    CHECK(best.omega.joint_mse ==
          doctest::Approx(0.5 * (best.omega.omega_eval.mse + best.omega.lambda_eval.mse))
              .epsilon(1e-10));

    // Independent re-evaluation: no other anchor does better.
    for (int year = 1960; year <= 1985; ++year) {
        goodwin::PhasePoint anchor{omn.at_year(year), lan.at_year(year)};
        auto [osim, lsim] = goodwin::simulate_window(d.params, anchor, year, 1960, 1985);
        double mse_o = 0.0, mse_l = 0.0;
        for (int y = 1960; y <= 1985; ++y) {
            mse_o += (osim.at_year(y) - omn.at_year(y)) * (osim.at_year(y) - omn.at_year(y));
            mse_l += (lsim.at_year(y) - lan.at_year(y)) * (lsim.at_year(y) - lan.at_year(y));
        }
        const double joint = 0.5 * (mse_o + mse_l) / 26.0;
        CHECK(best.omega.joint_mse <= joint + 1e-12);
    }
}

TEST_CASE("per-variable selection does at least as well on each variable") {
    auto d = sampler::interior_draw(42, 6, 0.05);
    auto [om, la] = goodwin::simulate_window(d.params, d.start, 1970, 1960, 1985);
    std::vector<double> ov(om.values().begin(), om.values().end());
    std::vector<double> lv(la.values().begin(), la.values().end());
    auto gen = goodwin::task_rng(42, 7);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (auto& v : ov) v += 0.003 * nd(gen);
    for (auto& v : lv) v += 0.003 * nd(gen);
    AnnualSeries omn(1960, ov), lan(1960, lv);
    auto joint = goodwin::best_orbit(d.params, omn, lan, goodwin::OrbitSelection::kJoint);
    auto per = goodwin::best_orbit(d.params, omn, lan, goodwin::OrbitSelection::kPerVariable);
    CHECK(per.omega.omega_eval.mse <= joint.omega.omega_eval.mse + 1e-15);
    CHECK(per.lambda.lambda_eval.mse <= joint.lambda.lambda_eval.mse + 1e-15);
}
