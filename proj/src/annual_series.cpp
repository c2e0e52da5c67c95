#include "goodwin/annual_series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace goodwin {

AnnualSeries::AnnualSeries(int start_year, std::vector<double> values, std::string label)
    : start_year_(start_year), values_(std::move(values)), label_(std::move(label)) {
    if (values_.empty()) {
        throw SeriesTooShort("series '" + label_ + "' has no observations");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            std::ostringstream msg;
            msg << "series '" << label_ << "' has non-finite value in year "
                << start_year_ + static_cast<int>(i);
            throw NonFiniteValue(msg.str());
        }
    }
}

double AnnualSeries::at_year(int year) const {
    if (!covers(year)) {
        std::ostringstream msg;
        msg << "year " << year << " outside series '" << label_ << "' range ["
            << start_year() << ", " << end_year() << "]";
        throw NoOverlap(msg.str());
    }
    return values_[static_cast<std::size_t>(year - start_year_)];
}

AnnualSeries AnnualSeries::window(int first_year, int last_year) const {
    const int lo = std::max(first_year, start_year());
    const int hi = std::min(last_year, end_year());
    if (lo > hi) {
        std::ostringstream msg;
        msg << "window [" << first_year << ", " << last_year << "] does not intersect series '"
            << label_ << "' range [" << start_year() << ", " << end_year() << "]";
        throw EmptyWindow(msg.str());
    }
    const auto begin = values_.begin() + (lo - start_year_);
    const auto end = begin + (hi - lo + 1);
    return AnnualSeries(lo, std::vector<double>(begin, end), label_);
}

AnnualSeries log_transform(const AnnualSeries& s) {
    std::vector<double> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] <= 0.0) {
            std::ostringstream msg;
            msg << "log of non-positive value " << s[i] << " in series '" << s.label()
                << "' year " << s.start_year() + static_cast<int>(i);
            throw NonPositiveValue(msg.str());
        }
        out.push_back(std::log(s[i]));
    }
    return AnnualSeries(s.start_year(), std::move(out), "log(" + s.label() + ")");
}

AnnualSeries log_growth(const AnnualSeries& s) {
    if (s.size() < 2) {
        throw SeriesTooShort("log_growth needs at least 2 observations, got " +
                             std::to_string(s.size()));
    }
    const AnnualSeries logged = log_transform(s);
    std::vector<double> out;
    out.reserve(s.size() - 1);
    for (std::size_t i = 1; i < logged.size(); ++i) {
        out.push_back(logged[i] - logged[i - 1]);
    }
    return AnnualSeries(s.start_year() + 1, std::move(out), "dlog(" + s.label() + ")");
}

AnnualSeries diff(const AnnualSeries& s) {
    if (s.size() < 2) {
        throw SeriesTooShort("diff needs at least 2 observations, got " +
                             std::to_string(s.size()));
    }
    std::vector<double> out;
    out.reserve(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) {
        out.push_back(s[i] - s[i - 1]);
    }
    return AnnualSeries(s.start_year() + 1, std::move(out), "d(" + s.label() + ")");
}

SummaryStats summarize(const AnnualSeries& s) {
    if (s.size() < 2) {
        throw SeriesTooShort("summarize needs at least 2 observations, got " +
                             std::to_string(s.size()));
    }
    const auto v = s.values();
    SummaryStats st;
    st.n = v.size();
    st.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) {
        const double d = x - st.mean;
        ss += d * d;
    }
    st.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    st.min = *mn;
    st.max = *mx;
    return st;
}

std::pair<AnnualSeries, AnnualSeries> align(const AnnualSeries& a, const AnnualSeries& b) {
    const int lo = std::max(a.start_year(), b.start_year());
    const int hi = std::min(a.end_year(), b.end_year());
    if (lo > hi) {
        std::ostringstream msg;
        msg << "series '" << a.label() << "' [" << a.start_year() << ", " << a.end_year()
            << "] and '" << b.label() << "' [" << b.start_year() << ", " << b.end_year()
            << "] have no common years";
        throw NoOverlap(msg.str());
    }
    return {a.window(lo, hi), b.window(lo, hi)};
}

}  // namespace goodwin
