#include "goodwin/evaluation.hpp"

#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <utility>

#include "goodwin/errors.hpp"

namespace goodwin {
namespace {

struct Moments {
    double mean = 0.0;
    double sd = 0.0;  // population standard deviation
};

Moments population_moments(std::span<const double> v) {
    const auto n = static_cast<double>(v.size());
    Moments m;
    for (double x : v) m.mean += x;
    m.mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.sd = std::sqrt(ss / n);
    return m;
}

// Like theil_decompose but maps an exact match to an all-zero decomposition
// instead of throwing, so a perfect candidate orbit wins rather than aborts.
TheilDecomposition theil_or_zero(const AnnualSeries& observed, const AnnualSeries& simulated) {
    try {
        return theil_decompose(observed, simulated);
    } catch (const ZeroMse&) {
        return TheilDecomposition{};
    }
}

}  // namespace

EquilibriumErrors equilibrium_errors(double mean_omega, double mean_lambda, double omega_g,
                                     double lambda_g) {
    if (mean_omega <= 0.0 || mean_lambda <= 0.0) {
        throw DivisionDomain("equilibrium_errors: empirical means must be positive");
    }
    EquilibriumErrors e;
    e.abs_err_omega = std::fabs(mean_omega - omega_g);
    e.rel_err_omega = e.abs_err_omega / mean_omega;
    e.abs_err_lambda = std::fabs(mean_lambda - lambda_g);
    e.rel_err_lambda = e.abs_err_lambda / mean_lambda;
    return e;
}

TheilDecomposition theil_decompose(const AnnualSeries& observed, const AnnualSeries& simulated) {
    const auto [o, s] = align(observed, simulated);
    const auto ov = o.values();
    const auto sv = s.values();
    const auto n = static_cast<double>(sv.size());

    double mse = 0.0;
    for (std::size_t i = 0; i < sv.size(); ++i) {
        mse += (sv[i] - ov[i]) * (sv[i] - ov[i]);
    }
    mse /= n;
    if (mse == 0.0) {
        throw ZeroMse("theil_decompose: series agree exactly, shares are undefined");
    }

    const Moments ms = population_moments(sv);
    const Moments mo = population_moments(ov);
    double cov = 0.0;
    for (std::size_t i = 0; i < sv.size(); ++i) {
        cov += (sv[i] - ms.mean) * (ov[i] - mo.mean);
    }
    cov /= n;
    const double sd_prod = ms.sd * mo.sd;
    const double r = sd_prod > 0.0 ? cov / sd_prod : 0.0;

    TheilDecomposition t;
    t.mse = mse;
    t.rmse = std::sqrt(mse);
    t.rmse_over_mean = t.rmse / mo.mean;
    t.u_bias = (ms.mean - mo.mean) * (ms.mean - mo.mean) / mse;
    t.u_variance = (ms.sd - mo.sd) * (ms.sd - mo.sd) / mse;
    t.u_covariance = 2.0 * (1.0 - r) * sd_prod / mse;
    return t;
}

BestOrbitResult best_orbit(const GoodwinParams& params, const AnnualSeries& omega_obs,
                           const AnnualSeries& lambda_obs, OrbitSelection mode,
                           const SimulateOptions& options) {
    const auto [om, lm] = align(omega_obs, lambda_obs);
    const int first = om.start_year();
    const int last = om.end_year();

    std::optional<OrbitEvaluation> best_joint;
    std::optional<OrbitEvaluation> best_omega;
    std::optional<OrbitEvaluation> best_lambda;
    std::vector<int> skipped;
    std::exception_ptr last_error;

    for (int year = first; year <= last; ++year) {
        const PhasePoint anchor{om.at_year(year), lm.at_year(year)};
        std::optional<OrbitEvaluation> maybe;
        try {
            auto [osim, lsim] = simulate_window(params, anchor, year, first, last, options);
            TheilDecomposition to = theil_or_zero(om, osim);
            TheilDecomposition tl = theil_or_zero(lm, lsim);
            const double joint = 0.5 * (to.mse + tl.mse);
            maybe.emplace(OrbitEvaluation{year, anchor, std::move(osim), std::move(lsim), to,
                                          tl, joint});
        } catch (const Error&) {
            skipped.push_back(year);
            last_error = std::current_exception();
            continue;
        }
        OrbitEvaluation eval = std::move(*maybe);
        if (mode == OrbitSelection::kJoint) {
            if (!best_joint || eval.joint_mse < best_joint->joint_mse) {
                best_joint = std::move(eval);
            }
        } else {
            if (!best_omega || eval.omega_eval.mse < best_omega->omega_eval.mse) {
                best_omega = eval;
            }
            if (!best_lambda || eval.lambda_eval.mse < best_lambda->lambda_eval.mse) {
                best_lambda = std::move(eval);
            }
        }
    }

    if (mode == OrbitSelection::kJoint) {
        if (!best_joint) {
            if (last_error) std::rethrow_exception(last_error);
            throw DriftToleranceUnmet("best_orbit: no anchor year could be integrated");
        }
        return {mode, *best_joint, *best_joint, std::move(skipped)};
    }
    if (!best_omega || !best_lambda) {
        if (last_error) std::rethrow_exception(last_error);
        throw DriftToleranceUnmet("best_orbit: no anchor year could be integrated");
    }
    return {mode, std::move(*best_omega), std::move(*best_lambda), std::move(skipped)};
}

}  // namespace goodwin
