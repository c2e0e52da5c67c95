#include "goodwin/dynamics.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "goodwin/errors.hpp"

namespace goodwin {
namespace {

bool positive_finite(const PhasePoint& s) {
    return std::isfinite(s.omega) && std::isfinite(s.lambda) && s.omega > 0.0 && s.lambda > 0.0;
}

PhasePoint rk4_step(const GoodwinParams& p, const PhasePoint& s, double h) {
    const PhasePoint k1 = rhs(p, s);
    const PhasePoint k2 = rhs(p, {s.omega + 0.5 * h * k1.omega, s.lambda + 0.5 * h * k1.lambda});
    const PhasePoint k3 = rhs(p, {s.omega + 0.5 * h * k2.omega, s.lambda + 0.5 * h * k2.lambda});
    const PhasePoint k4 = rhs(p, {s.omega + h * k3.omega, s.lambda + h * k3.lambda});
    return {s.omega + h / 6.0 * (k1.omega + 2.0 * k2.omega + 2.0 * k3.omega + k4.omega),
            s.lambda + h / 6.0 * (k1.lambda + 2.0 * k2.lambda + 2.0 * k3.lambda + k4.lambda)};
}

void check_options(const SimulateOptions& o) {
    if (!(o.drift_tol > 0.0) || !(o.initial_dt > 0.0) || o.output_dt < 0.0) {
        throw ConfigError("simulate: drift_tol and initial_dt must be positive, output_dt >= 0");
    }
}

// One fixed-step integration pass; returns false when the state leaves the
// positive quadrant or stops being finite. Records every `record_every`
// steps plus the final point; updates the running drift maximum.
bool integrate_pass(const GoodwinParams& p, const PhasePoint& init, double t0, double span,
                    double h, std::size_t record_every, double v0, double& max_drift,
                    DensePath& out) {
    const double denom = std::max(std::fabs(v0), 1e-12);
    const double dir = span < 0.0 ? -1.0 : 1.0;
    const double total = std::fabs(span);
    const auto full_steps = static_cast<std::size_t>(std::floor(total / h + 1e-9));
    const double remainder = total - static_cast<double>(full_steps) * h;
    const bool partial = remainder > 1e-9 * std::max(1.0, total);

    PhasePoint s = init;
    out.t.push_back(t0);
    out.omega.push_back(s.omega);
    out.lambda.push_back(s.lambda);

    for (std::size_t i = 1; i <= full_steps; ++i) {
        s = rk4_step(p, s, dir * h);
        if (!positive_finite(s)) return false;
        const double drift = std::fabs(conserved_quantity(p, s) - v0) / denom;
        max_drift = std::max(max_drift, drift);
        const bool last = i == full_steps && !partial;
        if (last || (record_every > 0 && i % record_every == 0)) {
            out.t.push_back(t0 + dir * static_cast<double>(i) * h);
            out.omega.push_back(s.omega);
            out.lambda.push_back(s.lambda);
        }
    }
    if (partial) {
        s = rk4_step(p, s, dir * remainder);
        if (!positive_finite(s)) return false;
        const double drift = std::fabs(conserved_quantity(p, s) - v0) / denom;
        max_drift = std::max(max_drift, drift);
        out.t.push_back(t0 + span);
        out.omega.push_back(s.omega);
        out.lambda.push_back(s.lambda);
    }
    return true;
}

double snap_to_dyadic(double dt) {
    double h = 1.0;
    while (h > dt + 1e-15) h *= 0.5;
    return h;
}

}  // namespace

void validate(const GoodwinParams& p) {
    for (double v : {p.alpha, p.beta, p.delta, p.nu, p.gamma, p.rho, p.k}) {
        if (!std::isfinite(v)) throw NonFiniteValue("model parameters must be finite");
    }
    if (p.nu <= 0.0) throw NonPositiveValue("capital-output ratio nu must be positive");
    if (p.k <= 0.0) throw NonPositiveValue("reinvestment fraction k must be positive");
}

PhasePoint rhs(const GoodwinParams& p, const PhasePoint& s) {
    return {s.omega * (p.gamma + p.rho * s.lambda - p.alpha),
            s.lambda * (p.k * (1.0 - s.omega) / p.nu - (p.alpha + p.beta + p.delta))};
}

Equilibrium equilibrium(const GoodwinParams& p) {
    validate(p);
    if (p.rho == 0.0) throw ZeroRho("equilibrium: rho == 0 leaves no interior fixed point");
    Equilibrium eq;
    eq.omega_bar = 1.0 - (p.alpha + p.beta + p.delta) * p.nu / p.k;
    eq.lambda_bar = (p.alpha - p.gamma) / p.rho;
    eq.interior_omega = eq.omega_bar > 0.0 && eq.omega_bar < 1.0;
    eq.interior_lambda = eq.lambda_bar > 0.0 && eq.lambda_bar <= 1.0;
    return eq;
}

double period(const GoodwinParams& p) {
    validate(p);
    const double radicand =
        (p.alpha - p.gamma) * (p.k / p.nu - (p.alpha + p.beta + p.delta));
    if (radicand <= 0.0) {
        throw ComplexPeriod("period: (alpha-gamma)(k/nu-(alpha+beta+delta)) is not positive");
    }
    return 2.0 * std::numbers::pi / std::sqrt(radicand);
}

double conserved_quantity(const GoodwinParams& p, const PhasePoint& s) {
    validate(p);
    if (!positive_finite(s)) {
        throw NonPositiveState("conserved quantity needs omega > 0 and lambda > 0");
    }
    const double kn = p.k / p.nu;
    return kn * s.omega - (kn - (p.alpha + p.beta + p.delta)) * std::log(s.omega) +
           p.rho * s.lambda - (p.alpha - p.gamma) * std::log(s.lambda);
}

DensePath integrate_dense(const GoodwinParams& p, const PhasePoint& init, double t0, double t1,
                          const SimulateOptions& options) {
    validate(p);
    check_options(options);
    if (!positive_finite(init)) {
        throw NonPositiveState("integrate_dense: initial state must be strictly positive");
    }
    const double span = t1 - t0;
    const double v0 = conserved_quantity(p, init);
    if (span == 0.0) {
        DensePath traj;
        traj.t.push_back(t0);
        traj.omega.push_back(init.omega);
        traj.lambda.push_back(init.lambda);
        traj.dt_used = options.initial_dt;
        return traj;
    }

    double h = options.initial_dt;
    for (std::size_t halving = 0; halving <= options.max_halvings; ++halving, h *= 0.5) {
        DensePath traj;
        traj.max_drift = 0.0;
        traj.dt_used = (span < 0.0 ? -h : h);
        const std::size_t record_every =
            options.output_dt == 0.0
                ? 1
                : std::max<std::size_t>(1, static_cast<std::size_t>(
                                               std::llround(options.output_dt / h)));
        if (integrate_pass(p, init, t0, span, h, record_every, v0, traj.max_drift, traj) &&
            traj.max_drift <= options.drift_tol) {
            return traj;
        }
    }
    throw DriftToleranceUnmet("integrate_dense: drift tolerance " +
                              std::to_string(options.drift_tol) + " not reached within " +
                              std::to_string(options.max_halvings) + " halvings");
}

std::pair<AnnualSeries, AnnualSeries> simulate_window(const GoodwinParams& p,
                                                      const PhasePoint& state, int state_year,
                                                      int first_year, int last_year,
                                                      const SimulateOptions& options) {
    validate(p);
    check_options(options);
    if (first_year > last_year || state_year < first_year || state_year > last_year) {
        throw EmptyWindow("simulate_window: need first_year <= state_year <= last_year");
    }
    if (!positive_finite(state)) {
        throw NonPositiveState("simulate_window: state must be strictly positive");
    }
    const double v0 = conserved_quantity(p, state);
    const int back_years = state_year - first_year;
    const int fwd_years = last_year - state_year;
    const std::size_t n_years = static_cast<std::size_t>(last_year - first_year) + 1;

    // Dyadic steps land on integer years exactly, so sampling needs no
    // interpolation.
    double h = snap_to_dyadic(options.initial_dt);
    for (std::size_t halving = 0; halving <= options.max_halvings; ++halving, h *= 0.5) {
        const auto per_year = static_cast<std::size_t>(std::llround(1.0 / h));
        double max_drift = 0.0;
        DensePath back;
        DensePath fwd;
        bool ok = true;
        if (back_years > 0) {
            ok = integrate_pass(p, state, 0.0, -static_cast<double>(back_years), h, per_year,
                                v0, max_drift, back);
        }
        if (ok && fwd_years > 0) {
            ok = integrate_pass(p, state, 0.0, static_cast<double>(fwd_years), h, per_year, v0,
                                max_drift, fwd);
        }
        if (!ok || max_drift > options.drift_tol) continue;

        std::vector<double> omega(n_years, std::numeric_limits<double>::quiet_NaN());
        std::vector<double> lambda(n_years, std::numeric_limits<double>::quiet_NaN());
        const auto put = [&](const DensePath& tr) {
            for (std::size_t i = 0; i < tr.size(); ++i) {
                const auto offset = static_cast<int>(std::llround(tr.t[i]));
                const auto pos = static_cast<std::size_t>(state_year + offset - first_year);
                omega[pos] = tr.omega[i];
                lambda[pos] = tr.lambda[i];
            }
        };
        put(back);
        put(fwd);
        if (back_years == 0 && fwd_years == 0) {
            omega[0] = state.omega;
            lambda[0] = state.lambda;
        }
        return {AnnualSeries(first_year, std::move(omega), "omega_sim"),
                AnnualSeries(first_year, std::move(lambda), "lambda_sim")};
    }
    throw DriftToleranceUnmet("simulate_window: drift tolerance not reached");
}

Trajectory simulate(const GoodwinParams& p, const PhasePoint& x0, int start_year,
                    std::size_t n_years, const SimulateOptions& options) {
    if (n_years < 1) throw EmptyWindow("simulate: need n_years >= 1");
    const int last_year = start_year + static_cast<int>(n_years);
    auto [omega, lambda] = simulate_window(p, x0, start_year, start_year, last_year, options);

    Trajectory out;
    out.start_year = start_year;
    out.params = p;
    out.initial = x0;
    out.points.reserve(omega.size());
    const double v0 = conserved_quantity(p, x0);
    const double denom = std::max(std::fabs(v0), 1e-12);
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const PhasePoint s{omega.values()[i], lambda.values()[i]};
        out.points.push_back(s);
        out.max_drift =
            std::max(out.max_drift, std::fabs(conserved_quantity(p, s) - v0) / denom);
        if (s.lambda > 1.0) out.lambda_exceeded_one = true;
    }
    return out;
}

double measure_return_time(const GoodwinParams& p, const PhasePoint& init,
                           const SimulateOptions& options) {
    const double t_lin = period(p);
    const Equilibrium eq = equilibrium(p);
    if (eq.omega_bar <= 0.0 || eq.lambda_bar <= 0.0) {
        throw ComplexPeriod("measure_return_time: fixed point is outside the positive quadrant");
    }
    const double dx = init.omega - eq.omega_bar;
    const double dy = init.lambda - eq.lambda_bar;
    if (std::fabs(dx) < 1e-9 && std::fabs(dy) < 1e-9) return t_lin;

    SimulateOptions dense = options;
    dense.initial_dt = std::min(options.initial_dt, 1.0 / 64.0);
    dense.output_dt = 0.0;  // need every step for the winding angle

    double horizon = 4.0 * t_lin;
    for (int attempt = 0; attempt < 4; ++attempt, horizon *= 2.0) {
        const DensePath traj = integrate_dense(p, init, 0.0, horizon, dense);
        double prev = std::atan2(traj.lambda[0] - eq.lambda_bar, traj.omega[0] - eq.omega_bar);
        double wound = 0.0;
        for (std::size_t i = 1; i < traj.size(); ++i) {
            const double ang =
                std::atan2(traj.lambda[i] - eq.lambda_bar, traj.omega[i] - eq.omega_bar);
            double step = ang - prev;
            while (step > std::numbers::pi) step -= 2.0 * std::numbers::pi;
            while (step <= -std::numbers::pi) step += 2.0 * std::numbers::pi;
            const double before = std::fabs(wound);
            wound += step;
            const double after = std::fabs(wound);
            if (after >= 2.0 * std::numbers::pi) {
                const double need = 2.0 * std::numbers::pi - before;
                const double frac = need / (after - before);
                return traj.t[i - 1] + frac * (traj.t[i] - traj.t[i - 1]);
            }
            prev = ang;
        }
    }
    throw ComplexPeriod("measure_return_time: orbit did not close within the horizon");
}

}  // namespace goodwin
