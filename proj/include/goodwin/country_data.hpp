#pragma once

#include <string>
#include <utility>

#include "goodwin/annual_series.hpp"

namespace goodwin {

/// Inclusive calendar-year window.
struct YearWindow {
    int first = 0;
    int last = 0;
};

/// Raw national-accounts inputs for one country, aligned to a common window.
struct CountrySeries {
    std::string country;
    AnnualSeries gdp_current;               // GDP at current prices
    AnnualSeries net_taxes;                 // taxes less subsidies on production and imports
    AnnualSeries gdp_deflator;              // price index for GDP
    AnnualSeries compensation;              // compensation of employees, current prices
    AnnualSeries employees;                 // headcount
    AnnualSeries self_employed;             // headcount
    AnnualSeries unemployed;                // headcount
    AnnualSeries net_capital_stock;         // constant prices
    AnnualSeries consumption_fixed_capital; // current prices
    AnnualSeries investment_deflator;       // price index for gross fixed capital formation
    AnnualSeries gross_capital_formation;   // current prices
};

/// Which deflator turns nominal gross capital formation into real investment
/// when forming the accumulation rate.
enum class KDeflator {
    kGdpDeflator,
    kInvestmentDeflator,
};

/// Model variables constructed from the raw inputs.
struct DerivedSeries {
    AnnualSeries Y;             // real output at factor cost
    AnnualSeries W;             // real wage bill, self-employment imputed
    AnnualSeries L;             // total employment
    AnnualSeries N;             // labor force
    AnnualSeries omega;         // wage share W/Y
    AnnualSeries lambda;        // employment rate L/N
    AnnualSeries wage_rate;     // real wage per worker W/L
    AnnualSeries productivity;  // output per worker Y/L
    AnnualSeries nu;            // capital-to-output ratio K/Y
    AnnualSeries delta;         // depreciation rate
    AnnualSeries k_rate;        // accumulation rate: real investment over profits
    AnnualSeries r;             // return on capital: profits over capital
};

/**
 * Builds the derived variables:
 *   Y = (gdp - net taxes)/deflator,           W = (1 + SE/EE) * compensation/deflator,
 *   L = EE + SE,                              N = L + unemployed,
 *   omega = W/Y,  lambda = L/N,  w = W/L,  a = Y/L,  nu = K/Y,
 *   delta = CFC/(investment deflator * K),    k = real investment/(Y - W),
 *   r = (Y - W)/K.
 * Throws NonPositiveProfit when W >= Y in any year, DivisionDomain on zero
 * employment or non-positive deflators or capital stock, NonPositiveValue
 * on negative headcounts, LengthMismatch when inputs are not aligned.
 */
[[nodiscard]] DerivedSeries derive(const CountrySeries& raw,
                                   KDeflator k_deflator = KDeflator::kGdpDeflator);

/// Sample means of the wage share and employment rate, in that order.
[[nodiscard]] std::pair<double, double> empirical_means(const DerivedSeries& d);

}  // namespace goodwin
