#include "goodwin/report_writer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "goodwin/errors.hpp"

namespace goodwin {

namespace {

std::string fmt(double v) {
    if (!std::isfinite(v)) return "NA";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : "NA"; }

/// Quotes a free-text CSV field when it contains separators or quotes.
std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += '"';
    return out;
}

class TableFile {
public:
    TableFile(const std::filesystem::path& path, const std::string& hash) : path_(path) {
        out_.open(path, std::ios::binary);
        if (!out_) throw IoFailure("cannot write " + path.string());
        out_ << "# config " << hash << "\n";
    }

    void comment(const std::string& text) { out_ << "# " << text << "\n"; }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i != 0) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::filesystem::path close() {
        out_.close();
        if (out_.fail()) throw IoFailure("error while writing " + path_.string());
        return path_;
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

/// Accumulates unweighted means over the country rows that have a value.
class AverageRow {
public:
    explicit AverageRow(std::size_t width) : sums_(width, 0.0) {}

    void add(const std::vector<double>& values) {
        for (std::size_t i = 0; i < sums_.size(); ++i) sums_[i] += values[i];
        ++count_;
    }

    [[nodiscard]] bool any() const { return count_ > 0; }

    [[nodiscard]] std::vector<std::string> cells() const {
        std::vector<std::string> out{"Average"};
        for (double s : sums_) out.push_back(fmt(s / static_cast<double>(count_)));
        return out;
    }

private:
    std::vector<double> sums_;
    std::size_t count_ = 0;
};

std::vector<std::string> na_row(const std::string& country, std::size_t n_values) {
    std::vector<std::string> cells{csv_quote(country)};
    cells.insert(cells.end(), n_values, "NA");
    return cells;
}

std::vector<std::string> value_row(const std::string& country,
                                   const std::vector<double>& values) {
    std::vector<std::string> cells{csv_quote(country)};
    for (double v : values) cells.push_back(fmt(v));
    return cells;
}

void fit_columns(std::vector<std::string>& header, const std::string& name) {
    header.push_back(name);
    header.push_back(name + "_p");
}

void push_fit(std::vector<double>& values, const RegressionFit& fit, std::size_t i) {
    values.push_back(fit.coefficients[i]);
    values.push_back(fit.p_values[i]);
}

}  // namespace

std::vector<std::filesystem::path> emit_reports(const std::vector<CountryReport>& reports,
                                                const PipelineConfig& cfg) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw IoFailure("cannot create " + cfg.output_dir.string() + ": " + ec.message());
    const std::string hash = config_hash(cfg);
    std::vector<fs::path> written;

    // ---- table 1: moments of the wage share and employment rate ----
    {
        TableFile t(cfg.output_dir / "table1.csv", hash);
        t.row({"country", "mean_omega", "sd_omega", "mean_lambda", "sd_lambda"});
        for (const CountryReport& r : reports) {
            if (r.omega_stats && r.lambda_stats) {
                t.row(value_row(r.country, {r.omega_stats->mean, r.omega_stats->std,
                                            r.lambda_stats->mean, r.lambda_stats->std}));
            } else {
                t.row(na_row(r.country, 4));
            }
        }
        written.push_back(t.close());
    }

    // ---- table 2: structural parameters, equilibrium, cycle period ----
    {
        TableFile t(cfg.output_dir / "table2.csv", hash);
        t.row({"country", "alpha", "beta", "delta", "nu", "gamma", "rho", "k", "omega_g",
               "lambda_g", "period"});
        for (const CountryReport& r : reports) {
            if (!r.estimates) {
                t.row(na_row(r.country, 10));
                continue;
            }
            const GoodwinParams& p = r.estimates->params;
            std::vector<std::string> cells =
                value_row(r.country, {p.alpha, p.beta, p.delta, p.nu, p.gamma, p.rho, p.k});
            cells.push_back(r.equilibrium_point ? fmt(r.equilibrium_point->omega_bar) : "NA");
            cells.push_back(r.equilibrium_point ? fmt(r.equilibrium_point->lambda_bar) : "NA");
            cells.push_back(fmt_opt(r.cycle_period));
            t.row(cells);
        }
        written.push_back(t.close());
    }

    // ---- table 3: equilibrium errors against the sample means ----
    {
        TableFile t(cfg.output_dir / "table3.csv", hash);
        t.row({"country", "abs_err_lambda", "rel_err_lambda_pct", "abs_err_omega",
               "rel_err_omega_pct"});
        AverageRow avg(4);
        for (const CountryReport& r : reports) {
            if (!r.errors) {
                t.row(na_row(r.country, 4));
                continue;
            }
            const std::vector<double> row{r.errors->abs_err_lambda,
                                          100.0 * r.errors->rel_err_lambda,
                                          r.errors->abs_err_omega,
                                          100.0 * r.errors->rel_err_omega};
            t.row(value_row(r.country, row));
            avg.add(row);
        }
        if (avg.any()) t.row(avg.cells());
        written.push_back(t.close());
    }

    // ---- table 4: error decomposition of the best-fitting orbit ----
    {
        TableFile t(cfg.output_dir / "table4.csv", hash);
        t.row({"country", "lambda_rmse_over_mean", "lambda_u_bias_pct",
               "lambda_u_variance_pct", "lambda_u_covariance_pct", "omega_rmse_over_mean",
               "omega_u_bias_pct", "omega_u_variance_pct", "omega_u_covariance_pct"});
        AverageRow avg(8);
        for (const CountryReport& r : reports) {
            if (!r.orbit) {
                t.row(na_row(r.country, 8));
                continue;
            }
            const TheilDecomposition& l = r.orbit->lambda.lambda_eval;
            const TheilDecomposition& o = r.orbit->omega.omega_eval;
            const std::vector<double> row{
                l.rmse_over_mean, 100.0 * l.u_bias, 100.0 * l.u_variance,
                100.0 * l.u_covariance, o.rmse_over_mean, 100.0 * o.u_bias,
                100.0 * o.u_variance, 100.0 * o.u_covariance};
            t.row(value_row(r.country, row));
            avg.add(row);
        }
        if (avg.any()) t.row(avg.cells());
        written.push_back(t.close());
    }

    // ---- appendix tables A1/A2: exponential trends with diagnostics ----
    auto trend_table = [&](const char* file,
                           const std::function<const LogTrendFit*(const CountryReport&)>& pick,
                           const std::function<const DiagnosticsReport*(const CountryReport&)>&
                               pick_diag) {
        TableFile t(cfg.output_dir / file, hash);
        t.row({"country", "growth", "growth_p", "log_level0", "log_level0_p", "r_squared",
               "adj_r_squared", "f_stat", "lb_p_1", "lb_p_2", "lb_p_3", "lb_p_4", "lb_p_5",
               "jb_p", "arch_p"});
        for (const CountryReport& r : reports) {
            const LogTrendFit* f = pick(r);
            const DiagnosticsReport* diag = pick_diag(r);
            if (f == nullptr || diag == nullptr) {
                t.row(na_row(r.country, 14));
                continue;
            }
            std::vector<double> row{f->growth,           f->fit.p_values[1],
                                    f->level0,           f->fit.p_values[0],
                                    f->fit.r_squared,    f->fit.adj_r_squared,
                                    f->fit.f_stat};
            for (double p : diag->ljung_box_p) row.push_back(p);
            row.push_back(diag->jarque_bera.p_value);
            row.push_back(diag->arch_lm.p_value);
            t.row(value_row(r.country, row));
        }
        written.push_back(t.close());
    };
    trend_table(
        "tableA1.csv",
        [](const CountryReport& r) {
            return r.estimates ? &r.estimates->productivity_trend : nullptr;
        },
        [](const CountryReport& r) {
            return r.productivity_trend_diag ? &*r.productivity_trend_diag : nullptr;
        });
    trend_table(
        "tableA2.csv",
        [](const CountryReport& r) {
            return r.estimates ? &r.estimates->labor_force_trend : nullptr;
        },
        [](const CountryReport& r) {
            return r.labor_force_trend_diag ? &*r.labor_force_trend_diag : nullptr;
        });

    // ---- table A3: unit-root battery ----
    {
        TableFile t(cfg.output_dir / "tableA3.csv", hash);
        std::vector<std::string> header{"country"};
        for (const char* var : {"real_wage_growth", "employment_rate", "productivity_growth",
                                "inflation", "nominal_wage_growth"}) {
            header.push_back(std::string(var) + "_stat");
            header.push_back(std::string(var) + "_p");
            header.push_back(std::string(var) + "_lags");
        }
        t.row(header);
        for (const CountryReport& r : reports) {
            if (!r.adf) {
                t.row(na_row(r.country, 15));
                continue;
            }
            std::vector<std::string> cells{csv_quote(r.country)};
            for (const AdfResult* a : {&r.adf->real_wage_growth, &r.adf->employment_rate,
                                       &r.adf->productivity_growth, &r.adf->inflation,
                                       &r.adf->nominal_wage_growth}) {
                cells.push_back(fmt(a->statistic));
                cells.push_back(fmt(a->p_value));
                cells.push_back(std::to_string(a->lags_used));
            }
            t.row(cells);
        }
        written.push_back(t.close());
    }

    // ---- table A4: serial correlation in the wage-equation residuals ----
    {
        TableFile t(cfg.output_dir / "tableA4.csv", hash);
        t.row({"country", "lag1", "lag2", "lag3", "lag4", "lag5"});
        for (const CountryReport& r : reports) {
            if (!r.uecm) {
                t.row(na_row(r.country, 5));
                continue;
            }
            std::vector<double> row(r.uecm->ljung_box_p.begin(), r.uecm->ljung_box_p.end());
            t.row(value_row(r.country, row));
        }
        written.push_back(t.close());
    }

    // ---- table A5: cointegration bounds test ----
    {
        TableFile t(cfg.output_dir / "tableA5.csv", hash);
        const auto& bounds = narayan_bounds_50();
        std::ostringstream note;
        note << "bounds (lower,upper):";
        for (const BoundsRow& b : bounds) {
            note << ' ' << fmt(100.0 * b.level) << "%=" << fmt(b.lower) << '-' << fmt(b.upper);
        }
        t.comment(note.str());
        t.row({"country", "f_statistic", "decision"});
        for (const CountryReport& r : reports) {
            if (!r.bounds) {
                t.row(na_row(r.country, 2));
                continue;
            }
            t.row({csv_quote(r.country), fmt(r.bounds->f_statistic),
                   to_string(r.bounds->decision)});
        }
        written.push_back(t.close());
    }

    // ---- table A6: long-run wage equation ----
    {
        TableFile t(cfg.output_dir / "tableA6.csv", hash);
        t.row({"country", "gamma", "gamma_p", "rho", "rho_p", "adj_r_squared", "lb_p_1",
               "lb_p_2", "lb_p_3", "lb_p_4", "lb_p_5"});
        for (const CountryReport& r : reports) {
            if (!r.levels) {
                t.row(na_row(r.country, 10));
                continue;
            }
            std::vector<double> row;
            push_fit(row, r.levels->fit, 0);
            push_fit(row, r.levels->fit, 1);
            row.push_back(r.levels->fit.adj_r_squared);
            for (double p : r.levels->ljung_box_p) row.push_back(p);
            t.row(value_row(r.country, row));
        }
        written.push_back(t.close());
    }

    // ---- table A7: restricted error-correction model ----
    {
        TableFile t(cfg.output_dir / "tableA7.csv", hash);
        std::vector<std::string> header{"country"};
        fit_columns(header, "intercept");
        fit_columns(header, "dlambda_lag");
        fit_columns(header, "correction");
        header.insert(header.end(), {"adj_r_squared", "lb_p_1", "lb_p_2", "lb_p_3", "lb_p_4",
                                     "lb_p_5", "jb_p", "arch_p"});
        t.row(header);
        for (const CountryReport& r : reports) {
            if (!r.recm) {
                t.row(na_row(r.country, 14));
                continue;
            }
            std::vector<double> row;
            push_fit(row, r.recm->fit, 0);
            push_fit(row, r.recm->fit, 1);
            push_fit(row, r.recm->fit, RecmFit::kCorrection);
            row.push_back(r.recm->fit.adj_r_squared);
            for (double p : r.recm->diagnostics.ljung_box_p) row.push_back(p);
            row.push_back(r.recm->diagnostics.jarque_bera.p_value);
            row.push_back(r.recm->diagnostics.arch_lm.p_value);
            t.row(value_row(r.country, row));
        }
        written.push_back(t.close());
    }

    // ---- table A8: unrestricted error-correction model ----
    {
        TableFile t(cfg.output_dir / "tableA8.csv", hash);
        std::vector<std::string> header{"country", "lag_order"};
        fit_columns(header, "intercept");
        fit_columns(header, "dlambda_lag");
        fit_columns(header, "z_level_lag");
        fit_columns(header, "lambda_level_lag");
        header.insert(header.end(), {"r_squared", "adj_r_squared", "nobs"});
        t.row(header);
        for (const CountryReport& r : reports) {
            if (!r.uecm) {
                t.row(na_row(r.country, 12));
                continue;
            }
            std::vector<std::string> cells{csv_quote(r.country),
                                           std::to_string(r.uecm->p_chosen)};
            std::vector<double> row;
            push_fit(row, r.uecm->fit, 0);
            push_fit(row, r.uecm->fit, 1);
            push_fit(row, r.uecm->fit, UecmFit::kLaggedLevelZ);
            push_fit(row, r.uecm->fit, UecmFit::kLaggedLevelLambda);
            row.push_back(r.uecm->fit.r_squared);
            row.push_back(r.uecm->fit.adj_r_squared);
            for (double v : row) cells.push_back(fmt(v));
            cells.push_back(std::to_string(r.uecm->fit.nobs));
            t.row(cells);
        }
        written.push_back(t.close());
    }

    // ---- per-country plot data ----
    for (const CountryReport& r : reports) {
        if (!r.derived) continue;
        const DerivedSeries& d = *r.derived;
        {
            TableFile t(cfg.output_dir / (r.country + "_derived.csv"), hash);
            t.row({"year", "Y", "W", "L", "N", "omega", "lambda", "wage_rate",
                   "productivity", "nu", "delta", "k_rate", "r"});
            for (std::size_t i = 0; i < d.omega.size(); ++i) {
                std::vector<std::string> cells{
                    std::to_string(d.omega.start_year() + static_cast<int>(i))};
                for (const AnnualSeries* s : {&d.Y, &d.W, &d.L, &d.N, &d.omega, &d.lambda,
                                              &d.wage_rate, &d.productivity, &d.nu, &d.delta,
                                              &d.k_rate, &d.r}) {
                    cells.push_back(fmt((*s)[i]));
                }
                t.row(cells);
            }
            written.push_back(t.close());
        }
        {
            TableFile t(cfg.output_dir / (r.country + "_trajectory.csv"), hash);
            if (r.orbit) {
                t.comment("anchor years: omega=" + std::to_string(r.orbit->omega.anchor_year) +
                          " lambda=" + std::to_string(r.orbit->lambda.anchor_year));
            }
            t.row({"year", "omega_obs", "lambda_obs", "omega_sim", "lambda_sim"});
            for (std::size_t i = 0; i < d.omega.size(); ++i) {
                const int year = d.omega.start_year() + static_cast<int>(i);
                std::vector<std::string> cells{std::to_string(year), fmt(d.omega[i]),
                                               fmt(d.lambda[i])};
                if (r.orbit && r.orbit->omega.omega_sim.covers(year)) {
                    cells.push_back(fmt(r.orbit->omega.omega_sim.at_year(year)));
                } else {
                    cells.emplace_back("NA");
                }
                if (r.orbit && r.orbit->lambda.lambda_sim.covers(year)) {
                    cells.push_back(fmt(r.orbit->lambda.lambda_sim.at_year(year)));
                } else {
                    cells.emplace_back("NA");
                }
                t.row(cells);
            }
            written.push_back(t.close());
        }
        if (r.stability_uecm || r.stability_levels) {
            TableFile t(cfg.output_dir / (r.country + "_cusum.csv"), hash);
            t.row({"model", "test", "year", "statistic", "lower", "upper"});
            auto block = [&t](const char* model, const char* test, const StabilityPath& p) {
                for (std::size_t i = 0; i < p.statistic.size(); ++i) {
                    t.row({model, test,
                           std::to_string(p.start_year + static_cast<int>(i)),
                           fmt(p.statistic[i]), fmt(p.lower[i]), fmt(p.upper[i])});
                }
            };
            if (r.stability_uecm) {
                block("wage_equation", "cusum", r.stability_uecm->cusum);
                block("wage_equation", "cusumsq", r.stability_uecm->cusumsq);
            }
            if (r.stability_levels) {
                block("levels", "cusum", r.stability_levels->cusum);
                block("levels", "cusumsq", r.stability_levels->cusumsq);
            }
            written.push_back(t.close());
        }
    }

    // ---- run summary ----
    {
        TableFile t(cfg.output_dir / "run_summary.csv", hash);
        t.row({"country", "status", "warnings", "detail"});
        for (const CountryReport& r : reports) {
            std::string detail;
            for (const std::string& w : r.warnings) {
                if (!detail.empty()) detail += "; ";
                detail += w;
            }
            if (!r.completed()) detail = r.fatal_error;
            t.row({csv_quote(r.country), r.completed() ? "ok" : "failed",
                   std::to_string(r.warnings.size()), csv_quote(detail)});
        }
        written.push_back(t.close());
    }

    return written;
}

}  // namespace goodwin
