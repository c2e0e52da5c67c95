#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "goodwin/config.hpp"
#include "goodwin/errors.hpp"
#include "goodwin/fixtures.hpp"
#include "goodwin/pipeline.hpp"
#include "goodwin/report_writer.hpp"

namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& leaf) {
    const fs::path dir = fs::temp_directory_path() / "goodwin_pipeline_tests" / leaf;
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const fs::path& path) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(read_text(path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("the default panel lists ten countries with their windows") {
    const auto panel = goodwin::default_countries();
    REQUIRE(panel.size() == 10);
    const char* ids[] = {"Australia", "Canada", "Denmark", "Finland", "France",
                         "Germany",   "Italy",  "Norway",  "UK",      "US"};
    for (std::size_t i = 0; i < panel.size(); ++i) {
        CHECK(panel[i].name == ids[i]);
        if (panel[i].name == "Germany") {
            CHECK(panel[i].window.first == 1960);
            CHECK(panel[i].window.last == 1990);
        } else {
            CHECK(panel[i].window.first == 1960);
            CHECK(panel[i].window.last == 2010);
        }
    }
    CHECK(goodwin::default_window("Germany").last == 1990);
    CHECK(goodwin::default_window("France").last == 2010);
}

TEST_CASE("config files populate every field") {
    const auto dir = temp_dir("config");
    write_text(dir / "cols.txt", "employees=EMP\n");
    write_text(dir / "demo.conf",
               "# demo configuration\n"
               "data_dir = data\n"
               "output_dir = results\n"
               "countries = goodwinia, breakland\n"
               "window.default = 1961,2005\n"
               "window.breakland = 1970,2000\n"
               "max_lag_p = 3\n"
               "adf_spec = constant_trend\n"
               "k_deflator = investment\n"
               "mse_mode = per_variable\n"
               "seed = 7\n"
               "column_map = cols.txt\n");
    const auto cfg = goodwin::load_config(dir / "demo.conf");
    CHECK(cfg.data_dir.filename() == "data");
    CHECK(cfg.output_dir.filename() == "results");
    REQUIRE(cfg.countries.size() == 2);
    CHECK(cfg.countries[0].name == "goodwinia");
    CHECK(cfg.countries[0].window.first == 1961);
    CHECK(cfg.countries[0].window.last == 2005);
    CHECK(cfg.countries[1].name == "breakland");
    CHECK(cfg.countries[1].window.first == 1970);
    CHECK(cfg.countries[1].window.last == 2000);
    CHECK(cfg.max_lag_p == 3);
    CHECK(cfg.adf_spec == goodwin::DeterministicSpec::kConstantTrend);
    CHECK(cfg.k_deflator == goodwin::KDeflator::kInvestmentDeflator);
    CHECK(cfg.mse_mode == goodwin::OrbitSelection::kPerVariable);
    CHECK(cfg.seed == 7);
    CHECK(cfg.column_map_path.parent_path() == dir);
    CHECK(cfg.column_map_path.filename() == "cols.txt");
}

TEST_CASE("bad config files are rejected") {
    const auto dir = temp_dir("badconfig");
    write_text(dir / "unknown.conf", "countries = a\nwhatever = 1\n");
    CHECK_THROWS_AS(goodwin::load_config(dir / "unknown.conf"), goodwin::ConfigError);
    write_text(dir / "enum.conf", "countries = a\nadf_spec = banana\n");
    CHECK_THROWS_AS(goodwin::load_config(dir / "enum.conf"), goodwin::ConfigError);
    write_text(dir / "window.conf", "countries = a\nwindow.default = 2005,1961\n");
    CHECK_THROWS_AS(goodwin::load_config(dir / "window.conf"), goodwin::ConfigError);
    write_text(dir / "empty.conf", "countries =\n");
    CHECK_THROWS_AS(goodwin::load_config(dir / "empty.conf"), goodwin::ConfigError);
    CHECK_THROWS_AS(goodwin::load_config(dir / "missing.conf"), goodwin::IoFailure);
}

TEST_CASE("environment variables override the directories") {
    goodwin::PipelineConfig cfg;
    cfg.data_dir = "a";
    cfg.output_dir = "b";
    ::unsetenv("GOODWIN_DATA_DIR");
    ::unsetenv("GOODWIN_OUTPUT_DIR");
    goodwin::apply_env_overrides(cfg);
    CHECK(cfg.data_dir == "a");
    CHECK(cfg.output_dir == "b");
    ::setenv("GOODWIN_DATA_DIR", "/tmp/env_data", 1);
    ::setenv("GOODWIN_OUTPUT_DIR", "/tmp/env_out", 1);
    goodwin::apply_env_overrides(cfg);
    CHECK(cfg.data_dir == "/tmp/env_data");
    CHECK(cfg.output_dir == "/tmp/env_out");
    ::unsetenv("GOODWIN_DATA_DIR");
    ::unsetenv("GOODWIN_OUTPUT_DIR");
}

TEST_CASE("equal configs hash equally; different configs differ") {
    goodwin::PipelineConfig a;
    a.data_dir = "data";
    a.countries = goodwin::default_countries();
    goodwin::PipelineConfig b = a;
    CHECK(goodwin::canonical_description(a) == goodwin::canonical_description(b));
    CHECK(goodwin::config_hash(a) == goodwin::config_hash(b));
    CHECK(goodwin::config_hash(a).size() == 16);
    CHECK(goodwin::config_hash(a).find_first_not_of("0123456789abcdef") ==
          std::string::npos);
    b.seed = 43;
    CHECK(goodwin::config_hash(a) != goodwin::config_hash(b));
    b = a;
    b.mse_mode = goodwin::OrbitSelection::kPerVariable;
    CHECK(goodwin::config_hash(a) != goodwin::config_hash(b));
}

TEST_CASE("a noiseless fixture is recovered to high precision") {
    auto recipe = goodwin::stable_fixture_recipe();
    recipe.noise_sd = 0.0;
    const auto truth = goodwin::fixture_truth();
    const auto d = goodwin::derive(goodwin::make_fixture_country(recipe));
    goodwin::PipelineConfig cfg;
    const auto est = goodwin::estimate_params(d, cfg);
    CHECK(est.params.alpha == doctest::Approx(truth.alpha).epsilon(1e-8));
    CHECK(est.params.beta == doctest::Approx(truth.beta).epsilon(1e-8));
    CHECK(est.params.delta == doctest::Approx(truth.delta).epsilon(1e-10));
    CHECK(est.params.nu == doctest::Approx(truth.nu).epsilon(1e-10));
    CHECK(est.params.k == doctest::Approx(truth.k).epsilon(1e-10));
    CHECK(est.params.gamma == doctest::Approx(truth.gamma).epsilon(1e-6));
    CHECK(est.params.rho == doctest::Approx(truth.rho).epsilon(1e-6));
    CHECK(!est.provenance.alpha.empty());
    CHECK(!est.provenance.gamma.empty());
}

TEST_CASE("the frozen noisy fixture still recovers the truth closely") {
    const auto truth = goodwin::fixture_truth();
    const auto d = goodwin::derive(
        goodwin::make_fixture_country(goodwin::stable_fixture_recipe()));
    goodwin::PipelineConfig cfg;
    const auto est = goodwin::estimate_params(d, cfg);
    CHECK(std::fabs(est.params.alpha - truth.alpha) < 1e-8);
    CHECK(std::fabs(est.params.beta - truth.beta) < 1e-8);
    CHECK(std::fabs(est.params.delta - truth.delta) < 1e-10);
    CHECK(std::fabs(est.params.nu - truth.nu) < 1e-10);
    CHECK(std::fabs(est.params.k - truth.k) < 1e-10);
    CHECK(std::fabs(est.params.gamma - truth.gamma) < 5e-4);
    CHECK(std::fabs(est.params.rho - truth.rho) < 5e-4);
}

TEST_CASE("run_country completes every stage on the stable fixture") {
    const auto raw = goodwin::make_fixture_country(goodwin::stable_fixture_recipe());
    goodwin::PipelineConfig cfg;
    const auto r = goodwin::run_country(raw, cfg);
    CHECK(r.completed());
    CHECK(r.country == "goodwinia");
    REQUIRE(r.window.has_value());
    CHECK(r.window->first == 1960);
    CHECK(r.window->last == 2010);
    CHECK(r.derived.has_value());
    CHECK(r.omega_stats.has_value());
    CHECK(r.lambda_stats.has_value());
    CHECK(r.adf.has_value());
    CHECK(r.uecm.has_value());
    REQUIRE(r.bounds.has_value());
    CHECK(r.bounds->decision == goodwin::BoundsDecision::kRejectAt1);
    CHECK(r.levels.has_value());
    CHECK(r.levels_diag.has_value());
    CHECK(r.recm.has_value());
    REQUIRE(r.stability_uecm.has_value());
    REQUIRE(r.stability_levels.has_value());
    CHECK(r.stability_uecm->cusum.stable);
    CHECK(r.stability_uecm->cusumsq.stable);
    CHECK(r.stability_levels->cusum.stable);
    CHECK(r.stability_levels->cusumsq.stable);
    CHECK(r.estimates.has_value());
    CHECK(r.productivity_trend_diag.has_value());
    CHECK(r.labor_force_trend_diag.has_value());
    REQUIRE(r.equilibrium_point.has_value());
    CHECK(r.equilibrium_point->interior_omega);
    CHECK(r.equilibrium_point->interior_lambda);
    CHECK(r.cycle_period.has_value());
    REQUIRE(r.errors.has_value());
    CHECK(r.errors->abs_err_omega < 0.05);
    CHECK(r.errors->abs_err_lambda < 0.05);
    CHECK(r.orbit.has_value());
    CHECK(r.warnings.empty());
}

TEST_CASE("the break fixture completes but trips the stability bands") {
    const auto raw = goodwin::make_fixture_country(goodwin::break_fixture_recipe());
    goodwin::PipelineConfig cfg;
    const auto r = goodwin::run_country(raw, cfg);
    CHECK(r.completed());
    REQUIRE(r.stability_uecm.has_value());
    REQUIRE(r.stability_levels.has_value());
    int flagged = 0;
    for (const auto* s : {&*r.stability_uecm, &*r.stability_levels}) {
        if (!s->cusum.stable || !s->cusumsq.stable) ++flagged;
    }
    CHECK(flagged >= 1);
}

TEST_CASE("run_all keeps order and stubs out missing files") {
    const auto data = temp_dir("run_all_data");
    goodwin::write_fixture_csv(
        goodwin::make_fixture_country(goodwin::stable_fixture_recipe()), data);
    goodwin::write_fixture_csv(
        goodwin::make_fixture_country(goodwin::break_fixture_recipe()), data);
    goodwin::PipelineConfig cfg;
    cfg.data_dir = data;
    cfg.countries = {{"goodwinia", {1960, 2010}},
                     {"breakland", {1960, 2010}},
                     {"nodata", {1960, 2010}}};
    cfg.output_dir = temp_dir("run_all_out");
    const auto reports = goodwin::run_all(cfg);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].country == "goodwinia");
    CHECK(reports[1].country == "breakland");
    CHECK(reports[2].country == "nodata");
    CHECK(reports[0].completed());
    CHECK(reports[1].completed());
    CHECK(!reports[2].completed());
    CHECK(!reports[2].fatal_error.empty());

    const auto files = goodwin::emit_reports(reports, cfg);
    CHECK(!files.empty());
    const std::string first_line = "# config " + goodwin::config_hash(cfg);
    std::map<fs::path, std::string> contents;
    for (const auto& f : files) {
        REQUIRE(fs::exists(f));
        const std::string text = read_text(f);
        CHECK(text.substr(0, first_line.size()) == first_line);
        contents[f] = text;
    }

    // Re-emission is byte identical.
    const auto again = goodwin::emit_reports(reports, cfg);
    REQUIRE(again.size() == files.size());
    for (const auto& f : again) CHECK(read_text(f) == contents.at(f));

    // Table 3: two value rows, one NA stub, and an unweighted average.
    const auto rows = parse_csv(cfg.output_dir / "table3.csv");
    REQUIRE(rows.size() == 5);  // header + 3 countries + Average
    CHECK(rows[0][0] == "country");
    CHECK(rows[3][0] == "nodata");
    CHECK(rows[3][1] == "NA");
    CHECK(rows[4][0] == "Average");
    for (std::size_t col = 1; col < 5; ++col) {
        const double a = std::stod(rows[1][col]);
        const double b = std::stod(rows[2][col]);
        const double avg = std::stod(rows[4][col]);
        CHECK(avg == doctest::Approx(0.5 * (a + b)).epsilon(1e-9));
    }
    CHECK(fs::exists(cfg.output_dir / "run_summary.csv"));
    CHECK(read_text(cfg.output_dir / "run_summary.csv").find("nodata") !=
          std::string::npos);
}
