#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "goodwin/annual_series.hpp"

namespace goodwin {

/**
 * Parameters of the growth-cycle system
 *
 *   domega/dt  = omega * (gamma + rho*lambda - alpha)
 *   dlambda/dt = lambda * (k*(1 - omega)/nu - (alpha + beta + delta))
 *
 * for the wage share omega and employment rate lambda: labor-productivity
 * growth alpha, labor-force growth beta, depreciation rate delta,
 * capital-output ratio nu, wage-equation intercept gamma and slope rho,
 * and the reinvested profit fraction k.
 */
struct GoodwinParams {
    double alpha = 0.0;
    double beta = 0.0;
    double delta = 0.0;
    double nu = 0.0;
    double gamma = 0.0;
    double rho = 0.0;
    double k = 0.0;
};

/// Validates finiteness and the positivity of nu and k; throws otherwise.
void validate(const GoodwinParams& p);

struct PhasePoint {
    double omega = 0.0;
    double lambda = 0.0;
};

/// Time derivative of the state at a phase point.
[[nodiscard]] PhasePoint rhs(const GoodwinParams& p, const PhasePoint& s);

/// The nontrivial fixed point, with interiority flags for each coordinate.
struct Equilibrium {
    double omega_bar = 0.0;
    double lambda_bar = 0.0;
    bool interior_omega = false;   // 0 < omega_bar < 1
    bool interior_lambda = false;  // 0 < lambda_bar <= 1
};

/// Fixed point of the system. Throws ZeroRho when rho == 0.
[[nodiscard]] Equilibrium equilibrium(const GoodwinParams& p);

/**
 * Small-oscillation period 2*pi / sqrt((alpha-gamma)(k/nu-(alpha+beta+delta))).
 * Throws ComplexPeriod when the radicand is not positive (no closed orbits
 * around the fixed point).
 */
[[nodiscard]] double period(const GoodwinParams& p);

/**
 * First integral of the motion,
 *   V = (k/nu)*omega - (k/nu - (alpha+beta+delta))*ln omega
 *       + rho*lambda - (alpha - gamma)*ln lambda,
 * constant along exact trajectories and used to control integration error.
 * Throws NonPositiveState off the open positive quadrant.
 */
[[nodiscard]] double conserved_quantity(const GoodwinParams& p, const PhasePoint& s);

struct SimulateOptions {
    double drift_tol = 1e-6;      // max allowed relative drift of the first integral
    double initial_dt = 0.0625;   // starting step, halved until the drift passes
    double output_dt = 0.0625;    // sampling interval for dense output (0 = every step)
    std::size_t max_halvings = 24;
};

/// Fine-grained integrator output, for phase portraits and period finding.
struct DensePath {
    std::vector<double> t;
    std::vector<double> omega;
    std::vector<double> lambda;
    double max_drift = 0.0;  // achieved relative drift of the first integral
    double dt_used = 0.0;    // accepted step size (signed)

    [[nodiscard]] std::size_t size() const { return t.size(); }
    [[nodiscard]] PhasePoint state(std::size_t i) const { return {omega[i], lambda[i]}; }
};

/**
 * Fourth-order Runge-Kutta integration from t0 to t1 (either direction).
 * The whole pass is redone with a halved step until the relative drift of
 * the first integral stays below options.drift_tol; if max_halvings is
 * exhausted, throws DriftToleranceUnmet. A state leaving the positive
 * quadrant counts as a failed pass. Throws NonPositiveState if the initial
 * state itself is not positive.
 */
[[nodiscard]] DensePath integrate_dense(const GoodwinParams& p, const PhasePoint& init,
                                        double t0, double t1,
                                        const SimulateOptions& options = {});

/// A simulated path sampled at integer years.
struct Trajectory {
    int start_year = 0;
    std::vector<PhasePoint> points;  // annual spacing, first point at start_year
    GoodwinParams params;
    PhasePoint initial;
    double max_drift = 0.0;
    bool lambda_exceeded_one = false;  // economically suspect but not an error

    [[nodiscard]] std::size_t size() const { return points.size(); }
};

/**
 * Integrates forward from x0 at start_year for n_years (n_years >= 1) and
 * records the state at each integer year; the result has n_years + 1
 * points. Same accuracy control and errors as integrate_dense.
 */
[[nodiscard]] Trajectory simulate(const GoodwinParams& p, const PhasePoint& x0, int start_year,
                                  std::size_t n_years, const SimulateOptions& options = {});

/**
 * Annual trajectory through a known state: the orbit passing through
 * `state` at `state_year`, integrated backward to first_year and forward
 * to last_year, sampled at integer years. Returns (omega, lambda) series
 * covering [first_year, last_year]. Throws EmptyWindow if the window is
 * empty or does not contain state_year.
 */
[[nodiscard]] std::pair<AnnualSeries, AnnualSeries> simulate_window(
    const GoodwinParams& p, const PhasePoint& state, int state_year, int first_year,
    int last_year, const SimulateOptions& options = {});

/**
 * Numeric period of the closed orbit through `init`: time for the phase
 * angle around the fixed point to wind by 2*pi. A start within 1e-9 of the
 * fixed point returns the small-oscillation period.
 */
[[nodiscard]] double measure_return_time(const GoodwinParams& p, const PhasePoint& init,
                                         const SimulateOptions& options = {});

}  // namespace goodwin
