#include "goodwin/fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <vector>

#include "goodwin/errors.hpp"
#include "goodwin/random.hpp"

namespace goodwin {

namespace {

/// Box-Muller normal deviates from explicitly constructed uniforms, so the
/// stream depends only on the (standard-pinned) mt19937_64 sequence.
class NormalSource {
public:
    explicit NormalSource(std::mt19937_64 gen) : gen_(gen) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;  // in [0, 1)
    }

    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

double reflect_into(double x, double lo, double hi) {
    while (x < lo || x > hi) {
        if (x < lo) x = 2.0 * lo - x;
        if (x > hi) x = 2.0 * hi - x;
    }
    return x;
}

}  // namespace

GoodwinParams fixture_truth() {
    GoodwinParams p;
    p.alpha = 0.02;
    p.beta = 0.015;
    p.delta = 0.05;
    p.nu = 3.0;
    p.rho = 0.05;
    p.gamma = p.alpha - p.rho * 0.93;  // centers the wage equation on 0.93
    p.k = 0.75;
    return p;
}

FixtureRecipe stable_fixture_recipe() {
    FixtureRecipe r;
    r.name = "goodwinia";
    r.seed = 40;  // frozen: tight recovery and a decisive bounds test
    r.truth = fixture_truth();
    return r;
}

FixtureRecipe break_fixture_recipe() {
    FixtureRecipe r;
    r.name = "breakland";
    r.seed = 40;  // frozen: the slope jump trips the stability bands
    r.truth = fixture_truth();
    r.break_year = 1985;
    r.rho_after_break = 0.5;
    return r;
}

CountrySeries make_fixture_country(const FixtureRecipe& recipe) {
    validate(recipe.truth);
    const GoodwinParams& p = recipe.truth;
    const int first = recipe.first_year;
    const std::size_t n = static_cast<std::size_t>(recipe.last_year - first + 1);
    if (recipe.last_year < first) throw EmptyWindow("fixture window is inverted");

    NormalSource lambda_noise(task_rng(recipe.seed, 1));
    NormalSource wage_noise(task_rng(recipe.seed, 2));

    const double lo = recipe.lambda_center - recipe.lambda_band;
    const double hi = recipe.lambda_center + recipe.lambda_band;

    // Employment rate: reflected AR(1) around the center.
    std::vector<double> lambda(n);
    lambda[0] = recipe.lambda_center;
    for (std::size_t t = 1; t < n; ++t) {
        const double pull =
            recipe.lambda_center +
            recipe.lambda_persistence * (lambda[t - 1] - recipe.lambda_center);
        lambda[t] = reflect_into(pull + recipe.lambda_innovation_sd * lambda_noise.next(),
                                 lo, hi);
    }

    // Real wage via the wage equation; slope switches at the break year.
    const double omega_bar = 1.0 - (p.alpha + p.beta + p.delta) * p.nu / p.k;
    const double a0 = 50.0;
    const double n0 = 10.0;
    std::vector<double> wage(n);
    wage[0] = omega_bar * a0;
    for (std::size_t t = 1; t < n; ++t) {
        double rho_t = p.rho;
        double gamma_t = p.gamma;
        if (recipe.break_year && first + static_cast<int>(t) >= *recipe.break_year) {
            rho_t = recipe.rho_after_break;
            gamma_t = p.alpha - rho_t * recipe.lambda_center;
        }
        const double z = gamma_t + rho_t * lambda[t] + recipe.noise_sd * wage_noise.next();
        wage[t] = wage[t - 1] * std::exp(z);
    }

    std::vector<double> gdp(n), taxes(n), defl(n), comp(n), ee(n), se(n), un(n), cap(n),
        cfc(n), inv_defl(n), gcf(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double td = static_cast<double>(t);
        const double a = a0 * std::exp(p.alpha * td);
        const double labor_force = n0 * std::exp(p.beta * td);
        const double employed = lambda[t] * labor_force;
        const double output = a * employed;
        const double wage_bill = wage[t] * employed;
        const double profit = output - wage_bill;
        if (!(profit > 0.0)) {
            throw NonPositiveProfit("fixture wage bill exhausts output in year " +
                                    std::to_string(first + static_cast<int>(t)));
        }
        defl[t] = std::pow(1.02, td);
        inv_defl[t] = std::pow(1.03, td);
        ee[t] = employed / 1.1;
        se[t] = employed - ee[t];
        un[t] = labor_force - employed;
        gdp[t] = output * defl[t] / 0.9;
        taxes[t] = 0.1 * gdp[t];
        comp[t] = wage[t] * ee[t] * defl[t];
        cap[t] = p.nu * output;
        cfc[t] = p.delta * inv_defl[t] * cap[t];
        gcf[t] = p.k * profit * defl[t];
    }

    auto mk = [&](std::vector<double> v, const char* label) {
        return AnnualSeries(first, std::move(v), label);
    };
    return CountrySeries{recipe.name,
                         mk(std::move(gdp), "gdp_current"),
                         mk(std::move(taxes), "net_taxes"),
                         mk(std::move(defl), "gdp_deflator"),
                         mk(std::move(comp), "compensation"),
                         mk(std::move(ee), "employees"),
                         mk(std::move(se), "self_employed"),
                         mk(std::move(un), "unemployed"),
                         mk(std::move(cap), "net_capital_stock"),
                         mk(std::move(cfc), "consumption_fixed_capital"),
                         mk(std::move(inv_defl), "investment_deflator"),
                         mk(std::move(gcf), "gross_capital_formation")};
}

std::filesystem::path write_fixture_csv(const CountrySeries& raw,
                                        const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoFailure("cannot create " + dir.string() + ": " + ec.message());
    const std::filesystem::path path = dir / (raw.country + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write " + path.string());

    const AnnualSeries* cols[] = {
        &raw.gdp_current,    &raw.net_taxes,           &raw.gdp_deflator,
        &raw.compensation,   &raw.employees,           &raw.self_employed,
        &raw.unemployed,     &raw.net_capital_stock,   &raw.consumption_fixed_capital,
        &raw.investment_deflator, &raw.gross_capital_formation,
    };
    out << "year";
    for (const AnnualSeries* s : cols) out << ',' << s->label();
    out << '\n';
    char buf[40];
    for (std::size_t i = 0; i < raw.gdp_current.size(); ++i) {
        out << raw.gdp_current.start_year() + static_cast<int>(i);
        for (const AnnualSeries* s : cols) {
            std::snprintf(buf, sizeof(buf), "%.17g", (*s)[i]);
            out << ',' << buf;
        }
        out << '\n';
    }
    out.close();
    if (out.fail()) throw IoFailure("error while writing " + path.string());
    return path;
}

}  // namespace goodwin
