#include "goodwin/distributions.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace goodwin::dist {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double chi_squared_sf(double x, double df) {
    if (x <= 0.0) {
        return 1.0;
    }
    const boost::math::chi_squared d(df);
    return boost::math::cdf(boost::math::complement(d, x));
}

double t_two_sided_p(double t, double df) {
    if (!std::isfinite(t)) {
        return std::isnan(t) ? std::nan("") : 0.0;
    }
    const boost::math::students_t d(df);
    return 2.0 * boost::math::cdf(d, -std::abs(t));
}

double f_sf(double x, double df1, double df2) {
    if (x <= 0.0) {
        return 1.0;
    }
    const boost::math::fisher_f d(df1, df2);
    return boost::math::cdf(boost::math::complement(d, x));
}

double normal_quantile(double p) {
    const boost::math::normal d;
    return boost::math::quantile(d, std::clamp(p, 1e-300, 1.0 - 1e-16));
}

}  // namespace goodwin::dist
