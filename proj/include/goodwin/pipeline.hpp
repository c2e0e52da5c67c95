#pragma once

#include <optional>
#include <string>
#include <vector>

#include "goodwin/cointegration.hpp"
#include "goodwin/config.hpp"
#include "goodwin/country_data.hpp"
#include "goodwin/diagnostics.hpp"
#include "goodwin/dynamics.hpp"
#include "goodwin/evaluation.hpp"
#include "goodwin/regression.hpp"
#include "goodwin/stability.hpp"
#include "goodwin/unit_root.hpp"

namespace goodwin {

/// Unit-root tests over the variables entering the wage equation.
struct AdfBattery {
    AdfResult real_wage_growth;
    AdfResult employment_rate;
    AdfResult productivity_growth;
    AdfResult inflation;
    AdfResult nominal_wage_growth;
};

/// Where each structural parameter came from.
struct ParameterProvenance {
    std::string alpha;
    std::string beta;
    std::string delta;
    std::string nu;
    std::string gamma;
    std::string rho;
    std::string k;
};

struct EstimatedParams {
    GoodwinParams params;
    ParameterProvenance provenance;
    LogTrendFit productivity_trend;  // source of alpha
    LogTrendFit labor_force_trend;   // source of beta
    LevelsFit phillips;              // source of gamma and rho
};

/**
 * Structural parameters from the derived series: alpha and beta as
 * exponential-trend slopes of productivity and the labor force, delta, nu
 * and k as sample means of their annual counterparts, gamma and rho from
 * the long-run wage equation on the employment rate.
 */
[[nodiscard]] EstimatedParams estimate_params(const DerivedSeries& d,
                                              const PipelineConfig& cfg);

/**
 * Everything the study produces for one country. Later stages are
 * std::optional: a failed stage leaves its slot empty and appends a
 * warning, it never aborts the run. `fatal_error` is non-empty only for
 * stub reports whose ingestion or derivation failed.
 */
struct CountryReport {
    std::string country;
    std::string fatal_error;
    std::optional<YearWindow> window;  // realized sample window

    std::optional<DerivedSeries> derived;
    std::optional<SummaryStats> omega_stats;   // wage-share moments
    std::optional<SummaryStats> lambda_stats;  // employment-rate moments

    std::optional<AdfBattery> adf;
    std::optional<UecmFit> uecm;
    std::optional<BoundsTestResult> bounds;
    std::optional<LevelsFit> levels;
    std::optional<DiagnosticsReport> levels_diag;
    std::optional<RecmFit> recm;
    std::optional<StabilityTestResult> stability_uecm;
    std::optional<StabilityTestResult> stability_levels;

    std::optional<EstimatedParams> estimates;
    std::optional<DiagnosticsReport> productivity_trend_diag;
    std::optional<DiagnosticsReport> labor_force_trend_diag;
    std::optional<Equilibrium> equilibrium_point;
    std::optional<double> cycle_period;
    std::optional<EquilibriumErrors> errors;
    std::optional<BestOrbitResult> orbit;

    std::vector<std::string> warnings;

    [[nodiscard]] bool completed() const { return fatal_error.empty(); }
};

/**
 * The full per-country procedure, in order: derive the model variables,
 * unit-root battery, UECM fit with its serial-correlation battery,
 * cointegration bounds test, levels model with diagnostics, restricted
 * error-correction model, parameter-stability tests on both wage
 * equations, structural-parameter estimation, equilibrium and cycle
 * period, equilibrium errors against the sample means, and the
 * best-fitting closed orbit. Throws only when derivation fails.
 */
[[nodiscard]] CountryReport run_country(const CountrySeries& raw, const PipelineConfig& cfg);

/**
 * Loads every configured country from <data_dir>/<id>.csv and runs it.
 * Countries run concurrently; results keep the configured order. A country
 * that cannot be loaded or derived yields a stub report with `fatal_error`
 * set instead of being dropped.
 */
[[nodiscard]] std::vector<CountryReport> run_all(const PipelineConfig& cfg);

}  // namespace goodwin
