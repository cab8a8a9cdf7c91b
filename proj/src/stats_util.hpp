#ifndef TVEFF_SRC_STATS_UTIL_HPP
#define TVEFF_SRC_STATS_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <vector>

namespace tveff::detail {

/// Empirical quantile with linear interpolation between order statistics
/// (the common "type 7" convention). q in [0, 1]; values need not be sorted.
inline double quantile_type7(std::vector<double> values, double q) {
    const std::size_t n = values.size();
    if (n == 0) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    if (q <= 0.0) return values.front();
    if (q >= 1.0) return values.back();
    const double h = (n - 1) * q;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - lo;
    if (lo + 1 >= n) return values.back();
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

}  // namespace tveff::detail

#endif  // TVEFF_SRC_STATS_UTIL_HPP
