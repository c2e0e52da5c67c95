#include "goodwin/country_data.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "goodwin/errors.hpp"

namespace goodwin {

namespace {

void require_aligned(const CountrySeries& raw) {
    const AnnualSeries* all[] = {
        &raw.gdp_current,    &raw.net_taxes,      &raw.gdp_deflator,
        &raw.compensation,   &raw.employees,      &raw.self_employed,
        &raw.unemployed,     &raw.net_capital_stock, &raw.consumption_fixed_capital,
        &raw.investment_deflator, &raw.gross_capital_formation,
    };
    for (const AnnualSeries* s : all) {
        if (s->start_year() != raw.gdp_current.start_year() ||
            s->end_year() != raw.gdp_current.end_year()) {
            throw LengthMismatch("country inputs for " + raw.country +
                                 " do not share a common year window");
        }
    }
}

[[noreturn]] void bad_denominator(const std::string& country, const std::string& what,
                                  int year) {
    throw DivisionDomain(what + " must be positive for " + country + " in " +
                         std::to_string(year));
}

}  // namespace

DerivedSeries derive(const CountrySeries& raw, KDeflator k_deflator) {
    require_aligned(raw);
    const int start = raw.gdp_current.start_year();
    const std::size_t n = raw.gdp_current.size();
    if (n == 0) throw EmptyWindow("no observations for " + raw.country);

    std::vector<double> Y(n), W(n), L(n), N(n), omega(n), lambda(n), wage(n),
        prod(n), nu(n), delta(n), k_rate(n), r(n);

    for (std::size_t i = 0; i < n; ++i) {
        const int year = start + static_cast<int>(i);
        const double defl = raw.gdp_deflator[i];
        const double inv_defl = raw.investment_deflator[i];
        const double ee = raw.employees[i];
        const double se = raw.self_employed[i];
        const double un = raw.unemployed[i];
        const double cap = raw.net_capital_stock[i];

        if (!(defl > 0.0)) bad_denominator(raw.country, "gdp deflator", year);
        if (!(inv_defl > 0.0)) bad_denominator(raw.country, "investment deflator", year);
        if (!(cap > 0.0)) bad_denominator(raw.country, "net capital stock", year);
        if (!(ee > 0.0)) bad_denominator(raw.country, "employees", year);
        if (se < 0.0 || un < 0.0) {
            throw NonPositiveValue("negative headcount for " + raw.country + " in " +
                                   std::to_string(year));
        }

        Y[i] = (raw.gdp_current[i] - raw.net_taxes[i]) / defl;
        W[i] = (1.0 + se / ee) * raw.compensation[i] / defl;
        L[i] = ee + se;
        N[i] = L[i] + un;
        if (!(Y[i] > 0.0)) bad_denominator(raw.country, "real output", year);

        const double profit = Y[i] - W[i];
        if (!(profit > 0.0)) {
            throw NonPositiveProfit("wage bill exhausts output for " + raw.country +
                                    " in " + std::to_string(year));
        }

        omega[i] = W[i] / Y[i];
        lambda[i] = L[i] / N[i];
        wage[i] = W[i] / L[i];
        prod[i] = Y[i] / L[i];
        nu[i] = cap / Y[i];
        delta[i] = raw.consumption_fixed_capital[i] / (inv_defl * cap);
        const double k_defl =
            (k_deflator == KDeflator::kGdpDeflator) ? defl : inv_defl;
        k_rate[i] = (raw.gross_capital_formation[i] / k_defl) / profit;
        r[i] = profit / cap;
    }

    auto mk = [&](std::vector<double> v, const char* label) {
        return AnnualSeries(start, std::move(v), label);
    };
    return DerivedSeries{
        mk(std::move(Y), "Y"),          mk(std::move(W), "W"),
        mk(std::move(L), "L"),          mk(std::move(N), "N"),
        mk(std::move(omega), "omega"),  mk(std::move(lambda), "lambda"),
        mk(std::move(wage), "wage_rate"), mk(std::move(prod), "productivity"),
        mk(std::move(nu), "nu"),        mk(std::move(delta), "delta"),
        mk(std::move(k_rate), "k_rate"), mk(std::move(r), "r"),
    };
}

std::pair<double, double> empirical_means(const DerivedSeries& d) {
    return {summarize(d.omega).mean, summarize(d.lambda).mean};
}

}  // namespace goodwin
