#pragma once

#include <vector>

#include "goodwin/annual_series.hpp"
#include "goodwin/dynamics.hpp"

namespace goodwin {

/// Equilibrium predictions against the sample means of the observed series.
struct EquilibriumErrors {
    double abs_err_omega = 0.0;  // |mean_omega - omega_G|
    double rel_err_omega = 0.0;  // abs error over the empirical mean
    double abs_err_lambda = 0.0;
    double rel_err_lambda = 0.0;
};

/// Throws DivisionDomain when an empirical mean is not positive.
[[nodiscard]] EquilibriumErrors equilibrium_errors(double mean_omega, double mean_lambda,
                                                   double omega_g, double lambda_g);

/**
 * Decomposition of the mean squared error between an observed and a
 * simulated series into bias, variance and covariance shares,
 *
 *   MSE = (m_s-m_o)^2 + (sd_s-sd_o)^2 + 2(1-r) sd_s sd_o,
 *
 * with population moments. The three shares sum to one. Throws ZeroMse
 * when the two series agree exactly.
 */
struct TheilDecomposition {
    double mse = 0.0;
    double rmse = 0.0;
    double rmse_over_mean = 0.0;  // rmse / observed mean
    double u_bias = 0.0;
    double u_variance = 0.0;
    double u_covariance = 0.0;
};

[[nodiscard]] TheilDecomposition theil_decompose(const AnnualSeries& observed,
                                                 const AnnualSeries& simulated);

/// How the best-fitting orbit is chosen.
enum class OrbitSelection {
    kJoint,        // one orbit minimizing the average of the two MSEs
    kPerVariable,  // independent orbits for the wage share and employment rate
};

/// One scored orbit: the anchor point it passes through and its fit.
struct OrbitEvaluation {
    int anchor_year = 0;
    PhasePoint anchor;
    AnnualSeries omega_sim;
    AnnualSeries lambda_sim;
    TheilDecomposition omega_eval;
    TheilDecomposition lambda_eval;
    double joint_mse = 0.0;  // mean of the omega and lambda MSEs
};

struct BestOrbitResult {
    OrbitSelection mode = OrbitSelection::kJoint;
    OrbitEvaluation omega;           // orbit reported for the wage share
    OrbitEvaluation lambda;          // orbit reported for the employment rate
    std::vector<int> skipped_years;  // anchors whose orbit could not be integrated
};

/**
 * Scans every year of the common observation window, integrates the model
 * orbit passing through the observed state of that year across the whole
 * window, and keeps the best fit under the requested mode (in kJoint mode
 * the two members are the same orbit). Ties prefer the earliest anchor.
 * Throws NoOverlap if the series share no window and rethrows the last
 * integration error if no anchor works at all.
 */
[[nodiscard]] BestOrbitResult best_orbit(const GoodwinParams& params,
                                         const AnnualSeries& omega_obs,
                                         const AnnualSeries& lambda_obs,
                                         OrbitSelection mode = OrbitSelection::kJoint,
                                         const SimulateOptions& options = {});

}  // namespace goodwin
