#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "goodwin/errors.hpp"

namespace goodwin {

/**
 * An annual time series: one real value per consecutive calendar year.
 *
 * Values are immutable after construction. Years never have gaps; the
 * value for year `start_year() + i` is `values()[i]`. All stored values
 * are finite.
 */
class AnnualSeries {
public:
    /// Empty placeholder (size 0); any real construction goes through the
    /// main constructor, which rejects empty input.
    AnnualSeries() = default;

    /// Throws SeriesTooShort on empty input, NonFiniteValue on NaN/inf.
    AnnualSeries(int start_year, std::vector<double> values, std::string label = "");

    [[nodiscard]] int start_year() const { return start_year_; }
    [[nodiscard]] int end_year() const { return start_year_ + static_cast<int>(values_.size()) - 1; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] const std::string& label() const { return label_; }
    [[nodiscard]] std::span<const double> values() const { return values_; }

    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    /// Value for a calendar year; throws NoOverlap if the year is outside the range.
    [[nodiscard]] double at_year(int year) const;

    [[nodiscard]] bool covers(int year) const {
        return year >= start_year() && year <= end_year();
    }

    /// Restriction to [first_year, last_year]; throws EmptyWindow if the
    /// intersection with the series range is empty.
    [[nodiscard]] AnnualSeries window(int first_year, int last_year) const;

    /// Same years and values under a new label.
    [[nodiscard]] AnnualSeries relabel(std::string label) const {
        return AnnualSeries(start_year_, values_, std::move(label));
    }

private:
    int start_year_ = 0;
    std::vector<double> values_;
    std::string label_;
};

struct SummaryStats {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation, n-1 divisor
    double min = 0.0;
    double max = 0.0;
    std::size_t n = 0;
};

/// Element-wise natural log. Throws NonPositiveValue if any value <= 0.
[[nodiscard]] AnnualSeries log_transform(const AnnualSeries& s);

/**
 * Log growth rate z_t = ln(s_t) - ln(s_{t-1}).
 *
 * The result is one observation shorter and starts one year later.
 * Throws NonPositiveValue or SeriesTooShort.
 */
[[nodiscard]] AnnualSeries log_growth(const AnnualSeries& s);

/// First differences s_t - s_{t-1}; shorter by one, starts one year later.
[[nodiscard]] AnnualSeries diff(const AnnualSeries& s);

/// Mean, sample std (n-1), min, max. Requires length >= 2.
[[nodiscard]] SummaryStats summarize(const AnnualSeries& s);

/// Both series restricted to their common year window. Throws NoOverlap.
[[nodiscard]] std::pair<AnnualSeries, AnnualSeries> align(const AnnualSeries& a,
                                                          const AnnualSeries& b);

}  // namespace goodwin
