// Command-line front end: full study runs, standalone orbit simulation,
// fixture generation, and a built-in synthetic-fixture check suite.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "goodwin/config.hpp"
#include "goodwin/csv_ingest.hpp"
#include "goodwin/errors.hpp"
#include "goodwin/fixtures.hpp"
#include "goodwin/pipeline.hpp"
#include "goodwin/report_writer.hpp"
#include "text_util.hpp"

namespace {

namespace fs = std::filesystem;

goodwin::GoodwinParams load_params_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw goodwin::IoFailure("cannot open " + path.string());
    std::map<std::string, double> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = goodwin::detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw goodwin::ConfigError(path.string() + ":" + std::to_string(line_no) +
                                       ": expected 'name = value'");
        }
        const std::string key = goodwin::detail::trim(line.substr(0, eq));
        const std::string value = goodwin::detail::trim(line.substr(eq + 1));
        try {
            kv[key] = std::stod(value);
        } catch (const std::exception&) {
            throw goodwin::ConfigError(path.string() + ":" + std::to_string(line_no) +
                                       ": cannot parse '" + value + "'");
        }
    }
    goodwin::GoodwinParams p;
    struct Slot {
        const char* name;
        double* target;
    };
    const Slot slots[] = {{"alpha", &p.alpha}, {"beta", &p.beta}, {"delta", &p.delta},
                          {"nu", &p.nu},       {"gamma", &p.gamma}, {"rho", &p.rho},
                          {"k", &p.k}};
    for (const Slot& s : slots) {
        const auto it = kv.find(s.name);
        if (it == kv.end()) {
            throw goodwin::ConfigError(path.string() + ": missing parameter '" +
                                       std::string(s.name) + "'");
        }
        *s.target = it->second;
        kv.erase(it);
    }
    if (!kv.empty()) {
        throw goodwin::ConfigError(path.string() + ": unknown parameter '" +
                                   kv.begin()->first + "'");
    }
    return p;
}

int cmd_run(const std::optional<fs::path>& config_path, const std::string& only_country) {
    goodwin::PipelineConfig cfg;
    if (config_path) {
        cfg = goodwin::load_config(*config_path);
    } else {
        cfg.countries = goodwin::default_countries();
    }
    goodwin::apply_env_overrides(cfg);
    if (cfg.data_dir.empty()) {
        std::cerr << "error: no data directory (pass --config or set GOODWIN_DATA_DIR)\n";
        return 2;
    }
    if (!only_country.empty()) {
        std::vector<goodwin::CountryConfig> kept;
        for (const auto& c : cfg.countries) {
            if (c.name == only_country) kept.push_back(c);
        }
        if (kept.empty()) {
            kept.push_back({only_country, goodwin::default_window(only_country)});
        }
        cfg.countries = std::move(kept);
    }

    const std::vector<goodwin::CountryReport> reports = goodwin::run_all(cfg);
    const auto files = goodwin::emit_reports(reports, cfg);

    int failures = 0;
    for (const goodwin::CountryReport& r : reports) {
        if (r.completed()) {
            std::cout << r.country << ": ok";
            if (!r.warnings.empty()) std::cout << " (" << r.warnings.size() << " warnings)";
            std::cout << '\n';
            for (const std::string& w : r.warnings) std::cout << "  - " << w << '\n';
        } else {
            ++failures;
            std::cout << r.country << ": FAILED: " << r.fatal_error << '\n';
        }
    }
    std::cout << files.size() << " files written to " << cfg.output_dir.string() << '\n';
    return failures == 0 ? 0 : 2;
}

int cmd_simulate(const fs::path& params_path, const std::string& init, std::size_t years) {
    const goodwin::GoodwinParams p = load_params_file(params_path);
    const auto parts = goodwin::detail::split(init, ',');
    if (parts.size() != 2) {
        std::cerr << "error: --init expects 'omega,lambda'\n";
        return 2;
    }
    goodwin::PhasePoint x0{std::stod(parts[0]), std::stod(parts[1])};
    const goodwin::Trajectory tr = goodwin::simulate(p, x0, 0, years);

    std::cout << "# alpha=" << p.alpha << " beta=" << p.beta << " delta=" << p.delta
              << " nu=" << p.nu << " gamma=" << p.gamma << " rho=" << p.rho << " k=" << p.k
              << '\n';
    std::cout << "# max relative drift of the first integral: " << tr.max_drift << '\n';
    std::cout << "year,omega,lambda\n";
    char buf[80];
    for (std::size_t i = 0; i < tr.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g\n",
                      tr.start_year + static_cast<int>(i), tr.points[i].omega,
                      tr.points[i].lambda);
        std::cout << buf;
    }
    return 0;
}

int cmd_make_fixtures(const fs::path& out_dir) {
    const auto stable = goodwin::make_fixture_country(goodwin::stable_fixture_recipe());
    const auto broken = goodwin::make_fixture_country(goodwin::break_fixture_recipe());
    std::cout << goodwin::write_fixture_csv(stable, out_dir).string() << '\n';
    std::cout << goodwin::write_fixture_csv(broken, out_dir).string() << '\n';
    return 0;
}

// ---- selftest ----------------------------------------------------------

struct SelftestState {
    int failed = 0;

    void check(bool ok, const std::string& name) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << '\n';
        if (!ok) ++failed;
    }
};

goodwin::PipelineConfig fixture_config(const fs::path& dir) {
    goodwin::PipelineConfig cfg;
    cfg.data_dir = dir;
    cfg.output_dir = dir / "out";
    cfg.countries = {{"goodwinia", {1960, 2010}}, {"breakland", {1960, 2010}}};
    return cfg;
}

int cmd_selftest() {
    SelftestState st;
    const fs::path dir =
        fs::temp_directory_path() / ("goodwin-selftest-" + std::to_string(::getpid()));
    fs::create_directories(dir);

    try {
        const goodwin::PipelineConfig cfg = fixture_config(dir);
        const goodwin::GoodwinParams truth = goodwin::fixture_truth();

        // Stable fixture: every stage present, bounds decisive, recovery tight.
        const auto stable_raw = goodwin::make_fixture_country(goodwin::stable_fixture_recipe());
        goodwin::write_fixture_csv(stable_raw, dir);
        const goodwin::CountryReport rep = goodwin::run_country(stable_raw, cfg);
        st.check(rep.completed() && rep.adf && rep.uecm && rep.bounds && rep.levels &&
                     rep.recm && rep.stability_uecm && rep.stability_levels &&
                     rep.estimates && rep.equilibrium_point && rep.cycle_period &&
                     rep.errors && rep.orbit,
                 "stable fixture: all stages ran");
        st.check(rep.warnings.empty(), "stable fixture: no warnings");
        st.check(rep.bounds &&
                     rep.bounds->decision == goodwin::BoundsDecision::kRejectAt1,
                 "stable fixture: long-run relation detected at 1%");
        if (rep.estimates) {
            const goodwin::GoodwinParams& e = rep.estimates->params;
            const double worst = std::max({std::fabs(e.alpha - truth.alpha),
                                           std::fabs(e.beta - truth.beta),
                                           std::fabs(e.delta - truth.delta),
                                           std::fabs(e.nu - truth.nu),
                                           std::fabs(e.gamma - truth.gamma),
                                           std::fabs(e.rho - truth.rho),
                                           std::fabs(e.k - truth.k)});
            st.check(worst < 1e-2, "stable fixture: parameters recovered within 0.01");
        } else {
            st.check(false, "stable fixture: parameters recovered within 0.01");
        }

        // Round trip through the CSV reader.
        const auto reloaded =
            goodwin::load_country_csv(dir / "goodwinia.csv", "goodwinia");
        const auto d0 = goodwin::derive(stable_raw);
        const auto d1 = goodwin::derive(reloaded);
        double max_diff = 0.0;
        for (std::size_t i = 0; i < d0.omega.size(); ++i) {
            max_diff = std::max(max_diff, std::fabs(d0.omega[i] - d1.omega[i]));
            max_diff = std::max(max_diff, std::fabs(d0.lambda[i] - d1.lambda[i]));
        }
        st.check(max_diff < 1e-10, "fixture file round-trips through the reader");

        // Break fixture: completes, but the stability tests flag it.
        const auto break_raw = goodwin::make_fixture_country(goodwin::break_fixture_recipe());
        goodwin::write_fixture_csv(break_raw, dir);
        const goodwin::CountryReport brep = goodwin::run_country(break_raw, cfg);
        const bool flagged =
            (brep.stability_uecm &&
             (!brep.stability_uecm->cusum.stable || !brep.stability_uecm->cusumsq.stable)) ||
            (brep.stability_levels &&
             (!brep.stability_levels->cusum.stable || !brep.stability_levels->cusumsq.stable));
        st.check(brep.completed(), "break fixture: run completes");
        st.check(flagged, "break fixture: stability tests flag the break");

        // Determinism of the emitted files.
        const auto reports = goodwin::run_all(cfg);
        const auto files1 = goodwin::emit_reports(reports, cfg);
        std::map<std::string, std::string> first_pass;
        for (const fs::path& f : files1) {
            std::ifstream in(f, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            first_pass[f.string()] = ss.str();
        }
        const auto reports2 = goodwin::run_all(cfg);
        const auto files2 = goodwin::emit_reports(reports2, cfg);
        bool identical = files1 == files2;
        for (const fs::path& f : files2) {
            std::ifstream in(f, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            identical = identical && first_pass[f.string()] == ss.str();
        }
        st.check(identical, "re-run emits byte-identical files");
    } catch (const std::exception& e) {
        std::cout << "[FAIL] unexpected error: " << e.what() << '\n';
        ++st.failed;
    }

    std::error_code ec;
    fs::remove_all(dir, ec);
    std::cout << (st.failed == 0 ? "selftest passed" : "selftest FAILED") << '\n';
    return st.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Growth-cycle study toolkit: ingest annual macro data, estimate the "
                 "model, test it, and simulate its orbits"};
    app.require_subcommand(1);

    std::string config_arg;
    std::string country_arg;
    auto* run = app.add_subcommand("run", "run the study and write every output table");
    run->add_option("--config", config_arg, "pipeline config file");
    run->add_option("--country", country_arg, "restrict the run to one country id");

    std::string params_arg;
    std::string init_arg;
    std::size_t years_arg = 0;
    auto* sim = app.add_subcommand("simulate", "integrate one orbit and print it as CSV");
    sim->add_option("--params", params_arg, "parameter file (name = value lines)")
        ->required();
    sim->add_option("--init", init_arg, "initial state as 'omega,lambda'")->required();
    sim->add_option("--years", years_arg, "number of years to simulate")->required();

    std::string fixtures_dir = "data/fixtures";
    auto* mkfix = app.add_subcommand("make-fixtures", "regenerate the bundled synthetic data");
    mkfix->add_option("--out", fixtures_dir, "output directory");

    app.add_subcommand("selftest", "run the synthetic-fixture check suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            std::optional<fs::path> cp;
            if (!config_arg.empty()) cp = config_arg;
            return cmd_run(cp, country_arg);
        }
        if (sim->parsed()) return cmd_simulate(params_arg, init_arg, years_arg);
        if (mkfix->parsed()) return cmd_make_fixtures(fixtures_dir);
        return cmd_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
