#include "tveff/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tveff/errors.hpp"

namespace tveff {

PriceSeries::PriceSeries(std::string market_id, YearMonth start_period,
                         std::vector<std::optional<double>> values)
    : market_id_(std::move(market_id)), start_(start_period), values_(std::move(values)) {
    // trim leading/trailing absences; interpolation only, never extrapolation
    std::size_t lo = 0;
    while (lo < values_.size() && !values_[lo].has_value()) ++lo;
    std::size_t hi = values_.size();
    while (hi > lo && !values_[hi - 1].has_value()) --hi;
    if (lo > 0 || hi < values_.size()) {
        values_ = std::vector<std::optional<double>>(values_.begin() + lo,
                                                     values_.begin() + hi);
        start_ = start_.plus(static_cast<int>(lo));
    }

    int present = 0;
    for (const auto& v : values_) {
        if (!v.has_value()) continue;
        ++present;
        if (!std::isfinite(*v) || *v <= 0.0) {
            throw ParseError("series '" + market_id_ +
                             "': prices must be finite and strictly positive");
        }
    }
    if (present < 24) {
        throw InsufficientData("series '" + market_id_ + "': " +
                               std::to_string(present) +
                               " present values, need at least 24");
    }
}

bool PriceSeries::has_gaps() const noexcept {
    return std::any_of(values_.begin(), values_.end(),
                       [](const auto& v) { return !v.has_value(); });
}

int PriceSeries::present_count() const noexcept {
    int n = 0;
    for (const auto& v : values_) n += v.has_value() ? 1 : 0;
    return n;
}

int PriceSeries::longest_gap() const noexcept {
    int best = 0, run = 0;
    for (const auto& v : values_) {
        if (!v.has_value()) {
            best = std::max(best, ++run);
        } else {
            run = 0;
        }
    }
    return best;
}

std::vector<double> log_returns(const PriceSeries& series) {
    const auto& v = series.values();
    std::vector<double> out;
    out.reserve(v.size() - 1);
    for (std::size_t t = 0; t + 1 < v.size(); ++t) {
        if (!v[t].has_value() || !v[t + 1].has_value()) {
            throw HasGaps("series '" + series.market_id() +
                          "' has absent values; impute before differencing");
        }
        out.push_back(std::log(*v[t + 1]) - std::log(*v[t]));
    }
    return out;
}

ReturnPanel align_panel(const std::vector<PriceSeries>& series_list) {
    if (series_list.empty()) {
        throw NoOverlap("no series supplied");
    }
    int lo = series_list.front().start_period().index();
    int hi = series_list.front().end_period().index();
    for (const auto& s : series_list) {
        if (s.has_gaps()) {
            throw HasGaps("series '" + s.market_id() + "' has gaps; impute first");
        }
        lo = std::max(lo, s.start_period().index());
        hi = std::min(hi, s.end_period().index());
    }
    const int months = hi - lo + 1;
    const int T = months - 1;  // returns in the common span
    if (T < 25) {
        throw NoOverlap("common span gives " + std::to_string(std::max(T, 0)) +
                        " returns, need at least 25");
    }

    const int k = static_cast<int>(series_list.size());
    ReturnPanel panel;
    panel.start_period = YearMonth::from_index(lo + 1);
    panel.matrix.resize(T, k);
    for (int c = 0; c < k; ++c) {
        const auto& s = series_list[c];
        panel.markets.push_back(s.market_id());
        const int offset = lo - s.start_period().index();
        for (int t = 0; t < T; ++t) {
            const double p0 = *s.values()[offset + t];
            const double p1 = *s.values()[offset + t + 1];
            panel.matrix(t, c) = std::log(p1) - std::log(p0);
        }
    }
    return panel;
}

ColumnStats descriptive_stats(const ReturnPanel& panel, int column) {
    const auto col = panel.matrix.col(column);
    const int n = static_cast<int>(col.size());
    ColumnStats st;
    st.mean = col.mean();
    st.sd = n > 1 ? std::sqrt((col.array() - st.mean).square().sum() / (n - 1)) : 0.0;
    st.max = col.maxCoeff();
    st.min = col.minCoeff();
    return st;
}

}  // namespace tveff
