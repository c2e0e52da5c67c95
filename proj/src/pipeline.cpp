#include "goodwin/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <utility>

#include "goodwin/csv_ingest.hpp"
#include "goodwin/errors.hpp"

namespace goodwin {

namespace {

AnnualSeries product_series(const AnnualSeries& a, const AnnualSeries& b,
                            std::string label) {
    const auto [x, y] = align(a, b);
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = x[i] * y[i];
    return AnnualSeries(x.start_year(), std::move(v), std::move(label));
}

/// An essentially exact fit has rounding-noise residuals; diagnosing their
/// shape would be meaningless, so such a fit passes the battery trivially.
DiagnosticsReport diagnostics_or_perfect(const RegressionFit& fit) {
    if (fit.ssr <= 1e-24 * std::max(1.0, fit.tss)) {
        DiagnosticsReport rep;
        rep.ljung_box_p.fill(1.0);
        rep.jarque_bera = {0.0, 1.0};
        rep.arch_lm = {0.0, 1.0};
        return rep;
    }
    return run_diagnostics(fit.residuals.values());
}

}  // namespace

EstimatedParams estimate_params(const DerivedSeries& d, const PipelineConfig& cfg) {
    (void)cfg;  // every configurable choice is already baked into `d`
    LogTrendFit prod = log_trend(d.productivity);
    LogTrendFit labor = log_trend(d.N);
    const AnnualSeries z = log_growth(d.wage_rate).relabel("z");
    LevelsFit phillips = levels_model(z, d.lambda);

    GoodwinParams p;
    p.alpha = prod.growth;
    p.beta = labor.growth;
    p.delta = summarize(d.delta).mean;
    p.nu = summarize(d.nu).mean;
    p.k = summarize(d.k_rate).mean;
    p.gamma = phillips.gamma();
    p.rho = phillips.rho();

    ParameterProvenance prov;
    prov.alpha = "slope of the exponential trend fitted to output per worker";
    prov.beta = "slope of the exponential trend fitted to the labor force";
    prov.delta = "sample mean of the annual depreciation rate";
    prov.nu = "sample mean of the capital-to-output ratio";
    prov.gamma = "intercept of the long-run wage equation on the employment rate";
    prov.rho = "slope of the long-run wage equation on the employment rate";
    prov.k = "sample mean of the accumulation rate";

    return EstimatedParams{p, std::move(prov), std::move(prod), std::move(labor),
                           std::move(phillips)};
}

CountryReport run_country(const CountrySeries& raw, const PipelineConfig& cfg) {
    CountryReport rep;
    rep.country = raw.country;
    rep.window = YearWindow{raw.gdp_current.start_year(), raw.gdp_current.end_year()};

    // The only fatal stage: without the derived variables nothing else runs.
    rep.derived = derive(raw, cfg.k_deflator);
    const DerivedSeries& d = *rep.derived;
    rep.omega_stats = summarize(d.omega);
    rep.lambda_stats = summarize(d.lambda);

    auto warn = [&rep](const std::string& stage, const std::exception& e) {
        rep.warnings.push_back(stage + ": " + e.what());
    };

    std::optional<AnnualSeries> z;
    try {
        z = log_growth(d.wage_rate).relabel("z");
    } catch (const Error& e) {
        warn("real wage growth", e);
    }

    if (z) {
        try {
            rep.adf = AdfBattery{
                adf_test(*z, cfg.adf_spec, cfg.max_lag_p),
                adf_test(d.lambda, cfg.adf_spec, cfg.max_lag_p),
                adf_test(log_growth(d.productivity), cfg.adf_spec, cfg.max_lag_p),
                adf_test(log_growth(raw.gdp_deflator), cfg.adf_spec, cfg.max_lag_p),
                adf_test(log_growth(product_series(d.wage_rate, raw.gdp_deflator,
                                                   "nominal_wage")),
                         cfg.adf_spec, cfg.max_lag_p),
            };
        } catch (const Error& e) {
            warn("unit-root battery", e);
        }

        try {
            rep.uecm = fit_uecm(*z, d.lambda, cfg.max_lag_p);
            for (std::size_t m = 1; m <= rep.uecm->ljung_box_p.size(); ++m) {
                if (rep.uecm->ljung_box_p[m - 1] < 0.05) {
                    rep.warnings.push_back("wage-equation residuals: serial correlation at lag " +
                                           std::to_string(m));
                }
            }
        } catch (const Error& e) {
            warn("error-correction model", e);
        }
    }

    if (rep.uecm) {
        try {
            rep.bounds = bounds_test(*rep.uecm);
            const BoundsDecision dec = rep.bounds->decision;
            if (dec != BoundsDecision::kRejectAt1 && dec != BoundsDecision::kRejectAt5 &&
                dec != BoundsDecision::kRejectAt10) {
                rep.warnings.push_back(std::string("no clear long-run relation: ") +
                                       to_string(dec));
            }
        } catch (const Error& e) {
            warn("bounds test", e);
        }
    }

    if (z) {
        try {
            rep.levels = levels_model(*z, d.lambda);
            rep.levels_diag = diagnostics_or_perfect(rep.levels->fit);
            for (const std::string& v : rep.levels_diag->violations) {
                rep.warnings.push_back("levels model: " + v);
            }
        } catch (const Error& e) {
            warn("levels model", e);
        }
    }

    if (z && rep.levels) {
        try {
            rep.recm = restricted_ecm(*z, d.lambda, *rep.levels);
            if (!rep.recm->correction_negative_significant) {
                rep.warnings.emplace_back(
                    "error-correction coefficient is not negative and significant");
            }
        } catch (const Error& e) {
            warn("restricted error-correction model", e);
        }
    }

    if (rep.uecm) {
        try {
            rep.stability_uecm =
                stability_tests(rep.uecm->regressand, rep.uecm->regressors, true,
                                rep.uecm->sample_start_year, StabilityLevel::kOnePercent);
            if (!rep.stability_uecm->cusum.stable) {
                rep.warnings.emplace_back("wage equation: cusum band crossed");
            }
            if (!rep.stability_uecm->cusumsq.stable) {
                rep.warnings.emplace_back("wage equation: cusum-of-squares band crossed");
            }
        } catch (const Error& e) {
            warn("stability tests (wage equation)", e);
        }
    }

    if (z && rep.levels) {
        try {
            const auto [za, la] = align(*z, d.lambda);
            rep.stability_levels =
                stability_tests(za, {la}, true, StabilityLevel::kOnePercent);
            if (!rep.stability_levels->cusum.stable) {
                rep.warnings.emplace_back("levels model: cusum band crossed");
            }
            if (!rep.stability_levels->cusumsq.stable) {
                rep.warnings.emplace_back("levels model: cusum-of-squares band crossed");
            }
        } catch (const Error& e) {
            warn("stability tests (levels model)", e);
        }
    }

    try {
        rep.estimates = estimate_params(d, cfg);
        rep.productivity_trend_diag =
            diagnostics_or_perfect(rep.estimates->productivity_trend.fit);
        rep.labor_force_trend_diag =
            diagnostics_or_perfect(rep.estimates->labor_force_trend.fit);
    } catch (const Error& e) {
        warn("parameter estimation", e);
    }

    if (rep.estimates) {
        const GoodwinParams& p = rep.estimates->params;
        try {
            const Equilibrium eq = equilibrium(p);
            rep.equilibrium_point = eq;
            if (!eq.interior_omega || !eq.interior_lambda) {
                rep.warnings.emplace_back("equilibrium is not interior");
            }
        } catch (const Error& e) {
            warn("equilibrium", e);
        }
        try {
            rep.cycle_period = period(p);
        } catch (const Error& e) {
            warn("cycle period", e);
        }
    }

    if (rep.equilibrium_point) {
        try {
            rep.errors = equilibrium_errors(rep.omega_stats->mean, rep.lambda_stats->mean,
                                            rep.equilibrium_point->omega_bar,
                                            rep.equilibrium_point->lambda_bar);
        } catch (const Error& e) {
            warn("equilibrium errors", e);
        }
    }

    if (rep.estimates) {
        try {
            rep.orbit = best_orbit(rep.estimates->params, d.omega, d.lambda, cfg.mse_mode);
            if (!rep.orbit->skipped_years.empty()) {
                rep.warnings.push_back("orbit search skipped " +
                                       std::to_string(rep.orbit->skipped_years.size()) +
                                       " anchor years");
            }
        } catch (const Error& e) {
            warn("orbit search", e);
        }
    }

    return rep;
}

std::vector<CountryReport> run_all(const PipelineConfig& cfg) {
    ColumnMap columns;
    if (!cfg.column_map_path.empty()) columns = load_column_map(cfg.column_map_path);

    auto one = [&cfg, &columns](const CountryConfig& cc) -> CountryReport {
        try {
            const CountrySeries raw = load_country_csv(
                cfg.data_dir / (cc.name + ".csv"), cc.name, cc.window, columns);
            return run_country(raw, cfg);
        } catch (const std::exception& e) {
            CountryReport stub;
            stub.country = cc.name;
            stub.fatal_error = e.what();
            return stub;
        }
    };

    std::vector<std::future<CountryReport>> futures;
    futures.reserve(cfg.countries.size());
    for (const CountryConfig& cc : cfg.countries) {
        futures.push_back(std::async(std::launch::async, one, cc));
    }
    std::vector<CountryReport> out;
    out.reserve(futures.size());
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

}  // namespace goodwin
